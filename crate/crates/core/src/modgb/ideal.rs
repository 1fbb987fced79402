use std::sync::Arc;

use super::buchberger::{buchberger, buchberger_truncated, GroebnerBasis};
use super::module::{GradedFreeModule, ModuleElement};
use crate::algebra::{Field, Polynomial, Ring};
use crate::error::{Error, ResourceKind, Result};
use crate::limits::Limits;

fn as_elements<F: Field>(gens: &[Polynomial<F>]) -> Vec<ModuleElement<F>> {
    gens.iter().map(|g| ModuleElement::new(vec![g.clone()])).collect()
}

/// Reduced Gröbner basis of a homogeneous ideal, complete in all degrees.
pub fn ideal_groebner<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Polynomial<F>],
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    let module = GradedFreeModule::new(ring, vec![0]);
    buchberger(&module, &as_elements(gens), limits)
}

/// Reduced Gröbner basis of a homogeneous ideal through degree `bound`.
pub fn ideal_groebner_truncated<F: Field>(
    ring: &Arc<Ring<F>>,
    gens: &[Polynomial<F>],
    bound: i64,
    limits: &Limits,
) -> Result<GroebnerBasis<F>> {
    let module = GradedFreeModule::new(ring, vec![0]);
    buchberger_truncated(&module, &as_elements(gens), bound, limits)
}

/// Whether `f` reduces to zero modulo the ideal basis `gb`.
pub fn ideal_membership<F: Field>(f: &Polynomial<F>, gb: &GroebnerBasis<F>) -> Result<bool> {
    if gb.module().rank() != 1 {
        return Err(Error::Grading("membership test needs an ideal basis".into()));
    }
    if !Arc::ptr_eq(f.ring(), gb.module().ring()) && **f.ring() != **gb.module().ring() {
        return Err(Error::RingMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    if gb.degree_bound().is_some() {
        match f.homogeneous_degree() {
            Some(d) if gb.is_complete_through(d as i64) => {}
            _ => return Err(Error::Resource(ResourceKind::Degree)),
        }
    }
    Ok(gb.normal_form(&ModuleElement::new(vec![f.clone()])).is_zero())
}

/// Whether the homogeneous ideal is primary to the irrelevant ideal: the
/// leading-term ideal contains a pure power of every variable.
pub fn is_irrelevant_primary<F: Field>(ring: &Arc<Ring<F>>, gens: &[Polynomial<F>], limits: &Limits) -> Result<bool> {
    for g in gens {
        if !g.is_homogeneous() {
            return Err(Error::NonHomogeneous(g.to_string()));
        }
    }
    let gb = ideal_groebner(ring, gens, limits)?;
    let mut seen = vec![false; ring.nvars()];
    for (_, m) in gb.leading_terms() {
        if m.is_one() {
            // the unit ideal is not primary to R_+
            return Ok(false);
        }
        if let Some(i) = m.pure_power_var() {
            seen[i] = true;
        }
    }
    Ok(seen.iter().all(|&s| s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Rationals};

    fn polys(ring: &Arc<Ring<Rationals>>, gens: &[&str]) -> Vec<Polynomial<Rationals>> {
        gens.iter().map(|s| parse_polynomial(s, ring).unwrap()).collect()
    }

    #[test]
    fn membership() {
        let ring = Ring::projective(Rationals, 2);
        let l = Limits::default();
        let gens = polys(&ring, &["X^2", "Y^2", "X*Y", "X*Z", "Y*Z"]);
        let gb = ideal_groebner(&ring, &gens, &l).unwrap();
        for g in &gens {
            assert!(ideal_membership(g, &gb).unwrap());
        }
        let xy = parse_polynomial("X*Y", &ring).unwrap();
        assert!(ideal_membership(&xy, &gb).unwrap());
        let sq = ideal_groebner(&ring, &polys(&ring, &["X^2", "Y^2"]), &l).unwrap();
        let x = parse_polynomial("X", &ring).unwrap();
        assert!(!ideal_membership(&x, &sq).unwrap());
    }

    #[test]
    fn irrelevant_primary() {
        let ring = Ring::projective(Rationals, 2);
        let l = Limits::default();
        assert!(is_irrelevant_primary(&ring, &polys(&ring, &["X^2", "Y^2", "Z^2"]), &l).unwrap());
        assert!(!is_irrelevant_primary(&ring, &polys(&ring, &["X^2", "X*Y", "X*Z"]), &l).unwrap());
        let quadrics = polys(&ring, &["X^2 - Y^2", "X^2 - Z^2", "X*Y", "X*Z", "Y*Z"]);
        assert!(is_irrelevant_primary(&ring, &quadrics, &l).unwrap());
        assert!(!is_irrelevant_primary(&ring, &polys(&ring, &["X", "Y"]), &l).unwrap());
    }
}
