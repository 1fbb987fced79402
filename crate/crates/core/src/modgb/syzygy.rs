use std::sync::Arc;

use super::buchberger::{buchberger_truncated, GroebnerBasis, Run};
use super::module::{from_terms, to_terms, GradedFreeModule, ModuleElement, Terms};
use crate::algebra::{Field, PolyMatrix};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// Homogeneous generators of the kernel of a graded matrix, as elements of
/// the source module.
#[derive(Debug, Clone)]
pub struct SyzygyGenerators<F: Field> {
    source: Arc<GradedFreeModule<F>>,
    generators: Vec<ModuleElement<F>>,
    degrees: Vec<i64>,
    degree_bound: Option<i64>,
}

impl<F: Field> SyzygyGenerators<F> {
    pub fn source(&self) -> &Arc<GradedFreeModule<F>> {
        &self.source
    }

    pub fn generators(&self) -> &[ModuleElement<F>] {
        &self.generators
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// `None` when the generators cover every degree; otherwise generators
    /// are only complete through this degree.
    pub fn degree_bound(&self) -> Option<i64> {
        self.degree_bound
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced Gröbner basis of the syzygy module through `bound`.
    pub fn groebner_basis(&self, bound: i64, limits: &Limits) -> Result<GroebnerBasis<F>> {
        if let Some(d) = self.degree_bound {
            if bound > d {
                return Err(Error::OutOfRange(format!(
                    "syzygies are only known through degree {d}, asked for {bound}"
                )));
            }
        }
        buchberger_truncated(&self.source, &self.generators, bound, limits)
    }
}

/// Checks that entry `(j, i)` is zero or homogeneous of degree
/// `deg e_i - deg e'_j`.
pub fn check_grading<F: Field>(
    matrix: &PolyMatrix<F>,
    source: &GradedFreeModule<F>,
    target: &GradedFreeModule<F>,
) -> Result<()> {
    if matrix.ncols() != source.rank() || matrix.nrows() != target.rank() {
        return Err(Error::Grading(format!(
            "matrix is {}x{}, modules have ranks {} -> {}",
            matrix.nrows(),
            matrix.ncols(),
            source.rank(),
            target.rank()
        )));
    }
    for j in 0..matrix.nrows() {
        for i in 0..matrix.ncols() {
            let e = matrix.get(j, i);
            if e.is_zero() {
                continue;
            }
            let want = source.degree(i) - target.degree(j);
            match e.homogeneous_degree() {
                Some(d) if d as i64 == want => {}
                Some(d) => {
                    return Err(Error::Grading(format!(
                        "entry ({}, {}) has degree {d}, expected {want}",
                        j + 1,
                        i + 1
                    )))
                }
                None => {
                    return Err(Error::Grading(format!(
                        "entry ({}, {}) is not homogeneous",
                        j + 1,
                        i + 1
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Generators of the kernel of `matrix: source -> target` through degree
/// `bound` (all degrees when `None`), via Buchberger with cofactor tracking.
pub fn syzygy_module<F: Field>(
    matrix: &PolyMatrix<F>,
    source: &Arc<GradedFreeModule<F>>,
    target: &Arc<GradedFreeModule<F>>,
    bound: Option<i64>,
    limits: &Limits,
) -> Result<SyzygyGenerators<F>> {
    check_grading(matrix, source, target)?;
    let ring = source.ring();
    let order = ring.order();
    let inputs: Vec<Terms<F::Elem>> = (0..matrix.ncols())
        .map(|i| to_terms(order, &ModuleElement::new(matrix.column(i))))
        .collect();
    let mut run = Run::new(
        ring.field(),
        order,
        ring.nvars(),
        target.rank(),
        inputs,
        source.degrees(),
        true,
    );
    let pending = run.run(bound, limits)?;
    let mut syz: Vec<(i64, Terms<F::Elem>)> = std::mem::take(&mut run.syzygies);
    // stable sort keeps production order inside a degree
    syz.sort_by_key(|(d, _)| *d);
    let (degrees, generators) = syz.into_iter().map(|(d, t)| (d, from_terms(source, &t))).unzip();
    Ok(SyzygyGenerators {
        source: source.clone(),
        generators,
        degrees,
        degree_bound: if pending { bound } else { None },
    })
}

/// Smallest generator degree, or `None` for the zero module.
pub fn initial_degree<F: Field>(syz: &SyzygyGenerators<F>) -> Option<i64> {
    syz.degrees.iter().copied().min()
}

/// Whether `matrix * e` vanishes.
pub fn annihilates<F: Field>(matrix: &PolyMatrix<F>, e: &ModuleElement<F>) -> Result<bool> {
    Ok(matrix.apply(e.components())?.iter().all(|p| p.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rationals, Ring};

    fn row(
        gens: &[&str],
    ) -> (
        PolyMatrix<Rationals>,
        Arc<GradedFreeModule<Rationals>>,
        Arc<GradedFreeModule<Rationals>>,
    ) {
        let ring = Ring::projective(Rationals, 2);
        let m = PolyMatrix::parse(&ring, &[gens.iter().map(|s| s.to_string()).collect()]).unwrap();
        let degs = (0..m.ncols())
            .map(|i| m.get(0, i).homogeneous_degree().map_or(0, |d| d as i64))
            .collect();
        let src = GradedFreeModule::new(&ring, degs);
        let tgt = GradedFreeModule::new(&ring, vec![0]);
        (m, src, tgt)
    }

    #[test]
    fn koszul_pair() {
        let (m, s, t) = row(&["X", "Y"]);
        let syz = syzygy_module(&m, &s, &t, None, &Limits::default()).unwrap();
        assert_eq!(syz.degrees(), &[2]);
        let g = &syz.generators()[0];
        let c: Vec<String> = g.components().iter().map(|p| p.to_string()).collect();
        // (Y, -X) up to sign
        assert!(c == ["Y", "-X"] || c == ["-Y", "X"], "{c:?}");
        assert_eq!(initial_degree(&syz), Some(2));
    }

    #[test]
    fn koszul_triple() {
        let (m, s, t) = row(&["X", "Y", "Z"]);
        let syz = syzygy_module(&m, &s, &t, None, &Limits::default()).unwrap();
        assert_eq!(syz.degrees(), &[2, 2, 2]);
        for g in syz.generators() {
            assert!(annihilates(&m, g).unwrap());
        }
    }

    #[test]
    fn five_monomials_start_in_degree_three() {
        let (m, s, t) = row(&["X^2", "Y^2", "X*Y", "X*Z", "Y*Z"]);
        let syz = syzygy_module(&m, &s, &t, Some(6), &Limits::default()).unwrap();
        assert_eq!(initial_degree(&syz), Some(3));
        for g in syz.generators() {
            assert!(annihilates(&m, g).unwrap());
        }
    }

    #[test]
    fn zero_column_gives_basis_syzygy() {
        let (m, s, t) = row(&["X", "0"]);
        let s = GradedFreeModule::new(s.ring(), vec![1, 4]);
        let syz = syzygy_module(&m, &s, &t, None, &Limits::default()).unwrap();
        assert_eq!(syz.degrees(), &[4]);
        assert_eq!(syz.generators()[0], ModuleElement::basis(&s, 1));
    }

    #[test]
    fn grading_mismatch_is_rejected() {
        let (m, _, t) = row(&["X", "Y^2"]);
        let bad = GradedFreeModule::new(m.ring(), vec![1, 1]);
        assert!(matches!(
            syzygy_module(&m, &bad, &t, None, &Limits::default()),
            Err(Error::Grading(_))
        ));
    }
}
