use super::buchberger::GroebnerBasis;
use crate::algebra::{count_monomials, Field, Monomial};
use crate::error::{Error, ResourceKind, Result};

/// Keeps the minimal generators of degree `<= s`.
fn minimalize(mut gens: Vec<Monomial>, s: i64) -> Vec<Monomial> {
    gens.retain(|g| (g.degree() as i64) <= s);
    gens.sort_by_key(Monomial::degree);
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

/// Number of degree-`s` monomials outside the monomial ideal `gens`.
///
/// Uses `std(J + (p), s) = std(J, s) - std(J : p, s - deg p)`, dropping
/// generators whose degree exceeds the target degree at every level.
pub fn standard_monomial_count(nvars: usize, gens: &[Monomial], s: i64) -> usize {
    if s < 0 {
        return 0;
    }
    let gens = minimalize(gens.to_vec(), s);
    count_rec(nvars, gens, s)
}

fn count_rec(nvars: usize, gens: Vec<Monomial>, s: i64) -> usize {
    if s < 0 {
        return 0;
    }
    if gens.is_empty() {
        return count_monomials(nvars, s);
    }
    if gens[0].is_one() {
        return 0;
    }
    if gens.len() == 1 {
        return count_monomials(nvars, s) - count_monomials(nvars, s - gens[0].degree() as i64);
    }
    let mut rest = gens;
    let p = rest.pop().expect("nonempty");
    let ps = s - p.degree() as i64;
    let colon: Vec<Monomial> = rest.iter().map(|g| p.quotient_of(&g.lcm(&p))).collect();
    let colon = minimalize(colon, ps);
    count_rec(nvars, rest, s) - count_rec(nvars, colon, ps)
}

/// Dimension of the degree-`t` piece of the submodule with Gröbner basis
/// `gb`, read off the leading-term module.
pub fn graded_piece_dim<F: Field>(gb: &GroebnerBasis<F>, t: i64) -> Result<usize> {
    if !gb.is_complete_through(t) {
        return Err(Error::Resource(ResourceKind::Degree));
    }
    let module = gb.module();
    let nvars = module.ring().nvars();
    let mut per_comp: Vec<Vec<Monomial>> = vec![Vec::new(); module.rank()];
    for (c, m) in gb.leading_terms() {
        per_comp[c].push(m);
    }
    let mut dim = 0;
    for (c, gens) in per_comp.iter().enumerate() {
        if gens.is_empty() {
            continue;
        }
        let s = module.component_degree(c, t);
        dim += count_monomials(nvars, s) - standard_monomial_count(nvars, gens, s);
    }
    Ok(dim)
}
