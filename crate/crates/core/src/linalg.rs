//! Sparse exact Gaussian elimination.
//!
//! Vectors are sorted `(index, value)` lists without zeros. An [`Echelon`]
//! keeps rows keyed by their leading index, normalized to leading
//! coefficient one; new vectors are top-reduced against it.

use std::collections::HashMap;

use crate::algebra::Field;

pub type SparseVec<E> = Vec<(usize, E)>;

/// `a - c * b` for sorted sparse vectors.
pub fn axpy<F: Field>(field: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (ia, va) = &a[i];
        let (ib, vb) = &b[j];
        if ia < ib {
            out.push((*ia, va.clone()));
            i += 1;
        } else if ib < ia {
            out.push((*ib, field.neg(&field.mul(c, vb))));
            j += 1;
        } else {
            let v = field.sub(va, &field.mul(c, vb));
            if !field.is_zero(&v) {
                out.push((*ia, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend(a[i..].iter().cloned());
    out.extend(b[j..].iter().map(|(k, v)| (*k, field.neg(&field.mul(c, v)))));
    out
}

pub fn scale<F: Field>(field: &F, v: &mut SparseVec<F::Elem>, c: &F::Elem) {
    for (_, x) in v.iter_mut() {
        *x = field.mul(x, c);
    }
}

/// Sorts by index and merges duplicates, dropping zeros.
pub fn normalize<F: Field>(field: &F, mut v: SparseVec<F::Elem>) -> SparseVec<F::Elem> {
    v.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec<F::Elem> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some((j, y)) if *j == i => *y = field.add(y, &x),
            _ => out.push((i, x)),
        }
    }
    out.retain(|(_, x)| !field.is_zero(x));
    out
}

#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    pivots: HashMap<usize, usize>,
    rows: Vec<SparseVec<F::Elem>>,
    combos: Vec<SparseVec<F::Elem>>,
    track: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            pivots: HashMap::new(),
            rows: Vec::new(),
            combos: Vec::new(),
            track: false,
        }
    }

    /// Echelon form that also records, for each row, which combination of
    /// the inserted vectors produced it.
    pub fn tracking(field: F) -> Self {
        Echelon {
            track: true,
            ..Echelon::new(field)
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Top-reduces `v` (and its combination, if tracked) against the rows.
    fn reduce(
        &self,
        mut v: SparseVec<F::Elem>,
        mut combo: SparseVec<F::Elem>,
    ) -> (SparseVec<F::Elem>, SparseVec<F::Elem>) {
        while let Some((lead, c)) = v.first() {
            let Some(&r) = self.pivots.get(lead) else {
                break;
            };
            let c = c.clone();
            v = axpy(&self.field, &v, &c, &self.rows[r]);
            if self.track {
                combo = axpy(&self.field, &combo, &c, &self.combos[r]);
            }
        }
        (v, combo)
    }

    /// Inserts `v`; returns whether it was independent of the rows so far.
    pub fn push(&mut self, v: SparseVec<F::Elem>) -> bool {
        assert!(!self.track, "use push_tracked on a tracking echelon");
        self.insert(v, Vec::new()).is_none()
    }

    /// Inserts `v` with its combination label. When `v` depends on the
    /// existing rows, returns the combination that reduces to zero.
    pub fn push_tracked(&mut self, v: SparseVec<F::Elem>, combo: SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        assert!(self.track, "push_tracked needs a tracking echelon");
        self.insert(v, combo)
    }

    fn insert(&mut self, v: SparseVec<F::Elem>, combo: SparseVec<F::Elem>) -> Option<SparseVec<F::Elem>> {
        let (mut v, mut combo) = self.reduce(v, combo);
        let Some((lead, c)) = v.first() else {
            return Some(combo);
        };
        let lead = *lead;
        let inv = self.field.inv(c);
        scale(&self.field, &mut v, &inv);
        if self.track {
            scale(&self.field, &mut combo, &inv);
            self.combos.push(combo);
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(v);
        None
    }

    pub fn contains(&self, v: SparseVec<F::Elem>) -> bool {
        let (v, _) = self.reduce(v, Vec::new());
        v.is_empty()
    }
}

/// Rank of the span of `vectors`.
pub fn rank<F: Field>(field: &F, vectors: impl IntoIterator<Item = SparseVec<F::Elem>>) -> usize {
    let mut e = Echelon::new(field.clone());
    for v in vectors {
        e.push(v);
    }
    e.rank()
}

/// Basis of `{ c : sum_k c_k columns[k] = 0 }`, as sparse coefficient vectors.
pub fn kernel_basis<F: Field>(
    field: &F,
    columns: impl IntoIterator<Item = SparseVec<F::Elem>>,
) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::tracking(field.clone());
    let mut out = Vec::new();
    for (k, v) in columns.into_iter().enumerate() {
        if let Some(c) = e.push_tracked(v, vec![(k, field.one())]) {
            out.push(c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        Rationals.from_i64(v)
    }

    fn dense(field: &Rationals, cols: &[&[i64]]) -> Vec<SparseVec<BigRational>> {
        cols.iter()
            .map(|c| {
                c.iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(i, x)| (i, field.from_i64(*x)))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn rank_of_small_matrix() {
        let f = Rationals;
        let cols = dense(&f, &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1], &[1, 3, 4]]);
        assert_eq!(rank(&f, cols.clone()), 2);
        let ker = kernel_basis(&f, cols.clone());
        assert_eq!(ker.len(), 2);
        for k in ker {
            let mut acc: SparseVec<BigRational> = Vec::new();
            for (j, c) in k {
                acc = axpy(&f, &acc, &f.neg(&c), &cols[j]);
            }
            assert!(acc.is_empty());
        }
    }

    #[test]
    fn mod_p_rank_can_drop() {
        // det = 7, so the matrix is singular over F_7 only
        let fq = Rationals;
        let cols = dense(&fq, &[&[1, 2], &[3, 13]]);
        assert_eq!(rank(&fq, cols), 2);
        let f7 = PrimeField::new(7).unwrap();
        let cols7: Vec<SparseVec<u64>> = vec![vec![(0, 1), (1, 2)], vec![(0, 3), (1, 6)]];
        assert_eq!(rank(&f7, cols7), 1);
    }

    #[test]
    fn axpy_cancels() {
        let f = Rationals;
        let a = vec![(0, q(2)), (3, q(1))];
        let r = axpy(&f, &a, &q(2), &[(0, q(1)), (5, q(1))]);
        assert_eq!(r, vec![(3, q(1)), (5, q(-2))]);
        assert_eq!(normalize(&f, vec![(2, q(1)), (0, q(1)), (2, q(-1))]), vec![(0, q(1))]);
    }
}
