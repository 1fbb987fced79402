use std::collections::HashMap;

use super::module::{GradedFreeModule, ModuleElement};
use super::syzygy::check_grading;
use crate::algebra::{Field, MonomialBasis, PolyMatrix, Polynomial};
use crate::error::Result;
use crate::limits::Limits;
use crate::linalg::{kernel_basis, normalize, rank, SparseVec};
use crate::par;

/// The degree-`t` component of a graded matrix as a scalar matrix, one
/// sparse column per `(source component, monomial)`.
struct DegreePiece<F: Field> {
    columns: Vec<SparseVec<F::Elem>>,
    /// `(component, basis)` for each source column block.
    source_blocks: Vec<(usize, usize)>,
    bases: HashMap<i64, MonomialBasis>,
}

fn degree_piece<F: Field>(
    matrix: &PolyMatrix<F>,
    source: &GradedFreeModule<F>,
    target: &GradedFreeModule<F>,
    t: i64,
    limits: &Limits,
) -> DegreePiece<F> {
    let nvars = source.ring().nvars();
    let field = source.ring().field();
    let mut bases: HashMap<i64, MonomialBasis> = HashMap::new();
    for i in 0..source.rank() {
        let d = source.component_degree(i, t);
        bases.entry(d).or_insert_with(|| MonomialBasis::new(nvars, d));
    }
    let mut row_offset = Vec::with_capacity(target.rank());
    let mut off = 0;
    for j in 0..target.rank() {
        let d = target.component_degree(j, t);
        bases.entry(d).or_insert_with(|| MonomialBasis::new(nvars, d));
        row_offset.push(off);
        off += bases[&d].len();
    }
    let mut blocks = Vec::new();
    for i in 0..source.rank() {
        let n = bases[&source.component_degree(i, t)].len();
        for k in 0..n {
            blocks.push((i, k));
        }
    }
    let bases_ref = &bases;
    let columns = par::map(limits.parallel, blocks.clone(), |(i, k)| {
        let mono = &bases_ref[&source.component_degree(i, t)].monomials[k];
        let mut col: SparseVec<F::Elem> = Vec::new();
        for j in 0..target.rank() {
            let e = matrix.get(j, i);
            if e.is_zero() {
                continue;
            }
            let basis = &bases_ref[&target.component_degree(j, t)];
            for (m, c) in e.terms() {
                let idx = basis.index_of(&m.mul(mono)).expect("grading checked");
                col.push((row_offset[j] + idx, c.clone()));
            }
        }
        normalize(field, col)
    });
    DegreePiece {
        columns,
        source_blocks: blocks,
        bases,
    }
}

/// Dimension of the degree-`t` part of `ker(matrix)` by exact elimination.
pub fn kernel_dim_linalg<F: Field>(
    matrix: &PolyMatrix<F>,
    source: &GradedFreeModule<F>,
    target: &GradedFreeModule<F>,
    t: i64,
    limits: &Limits,
) -> Result<usize> {
    check_grading(matrix, source, target)?;
    limits.check_time()?;
    let piece = degree_piece(matrix, source, target, t, limits);
    let n = piece.columns.len();
    Ok(n - rank(source.ring().field(), piece.columns))
}

/// A basis of the degree-`t` part of `ker(matrix)` as module elements.
pub fn kernel_basis_linalg<F: Field>(
    matrix: &PolyMatrix<F>,
    source: &GradedFreeModule<F>,
    target: &GradedFreeModule<F>,
    t: i64,
    limits: &Limits,
) -> Result<Vec<ModuleElement<F>>> {
    check_grading(matrix, source, target)?;
    limits.check_time()?;
    let ring = source.ring();
    let piece = degree_piece(matrix, source, target, t, limits);
    let kernel = kernel_basis(ring.field(), piece.columns);
    Ok(kernel
        .into_iter()
        .map(|combo| {
            let mut buckets = vec![Vec::new(); source.rank()];
            for (col, c) in combo {
                let (i, k) = piece.source_blocks[col];
                let m = piece.bases[&source.component_degree(i, t)].monomials[k].clone();
                buckets[i].push((m, c));
            }
            ModuleElement::new(buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect())
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Rationals, Ring};
    use crate::modgb::syzygy::annihilates;
    use std::sync::Arc;

    fn row(
        gens: &[&str],
        degs: Vec<i64>,
    ) -> (
        PolyMatrix<Rationals>,
        Arc<GradedFreeModule<Rationals>>,
        Arc<GradedFreeModule<Rationals>>,
    ) {
        let ring = Ring::projective(Rationals, 2);
        let m = PolyMatrix::parse(&ring, &[gens.iter().map(|s| s.to_string()).collect()]).unwrap();
        let src = GradedFreeModule::new(&ring, degs);
        let tgt = GradedFreeModule::new(&ring, vec![0]);
        (m, src, tgt)
    }

    #[test]
    fn koszul_sections() {
        let (m, s, t) = row(&["X", "Y", "Z"], vec![1, 1, 1]);
        let l = Limits::default();
        assert_eq!(kernel_dim_linalg(&m, &s, &t, 1, &l).unwrap(), 0);
        assert_eq!(kernel_dim_linalg(&m, &s, &t, 2, &l).unwrap(), 3);
        // 3 * 6 - 10
        assert_eq!(kernel_dim_linalg(&m, &s, &t, 3, &l).unwrap(), 8);
        assert_eq!(kernel_dim_linalg(&m, &s, &t, -4, &l).unwrap(), 0);
    }

    #[test]
    fn five_monomials() {
        let (m, s, t) = row(&["X^2", "Y^2", "X*Y", "X*Z", "Y*Z"], vec![2; 5]);
        let l = Limits::default();
        assert_eq!(kernel_dim_linalg(&m, &s, &t, 2, &l).unwrap(), 0);
        assert!(kernel_dim_linalg(&m, &s, &t, 3, &l).unwrap() > 0);
        for e in kernel_basis_linalg(&m, &s, &t, 3, &l).unwrap() {
            assert!(annihilates(&m, &e).unwrap());
            assert_eq!(e.degree(&s).unwrap(), Some(3));
        }
    }
}
