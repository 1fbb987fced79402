use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::poly::{Polynomial, Ring};
use crate::error::{Error, Result};

/// A dense matrix of polynomials, stored row-major.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<F: Field> {
    ring: Arc<Ring<F>>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Field> PolyMatrix<F> {
    pub fn zeros(ring: &Arc<Ring<F>>, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![Polynomial::zero(ring); rows * cols],
        }
    }

    pub fn from_rows(ring: &Arc<Ring<F>>, rows: Vec<Vec<Polynomial<F>>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for (j, row) in rows.into_iter().enumerate() {
            if row.len() != ncols {
                return Err(Error::OutOfRange(format!(
                    "row {} has {} entries, expected {ncols}",
                    j + 1,
                    row.len()
                )));
            }
            for p in row {
                if !Arc::ptr_eq(p.ring(), ring) && **p.ring() != **ring {
                    return Err(Error::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            rows: nrows,
            cols: ncols,
            entries,
        })
    }

    /// Parses every entry with the polynomial grammar.
    pub fn parse(ring: &Arc<Ring<F>>, rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| super::parse_polynomial(s, ring)).collect())
            .collect::<Result<Vec<Vec<_>>>>()?;
        PolyMatrix::from_rows(ring, parsed)
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial<F> {
        &self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, p: Polynomial<F>) {
        self.entries[row * self.cols + col] = p;
    }

    pub fn row(&self, row: usize) -> &[Polynomial<F>] {
        &self.entries[row * self.cols..(row + 1) * self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Polynomial<F>> {
        (0..self.rows).map(|r| self.get(r, col).clone()).collect()
    }

    pub fn map_entries(&self, mut f: impl FnMut(&Polynomial<F>) -> Result<Polynomial<F>>) -> Result<Self> {
        Ok(PolyMatrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(&mut f).collect::<Result<_>>()?,
        })
    }

    /// Matrix with columns reordered: column `k` of the result is column
    /// `perm[k]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Self {
        let mut out = PolyMatrix::zeros(&self.ring, self.rows, perm.len());
        for r in 0..self.rows {
            for (k, &c) in perm.iter().enumerate() {
                out.set(r, k, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = PolyMatrix::zeros(&self.ring, perm.len(), self.cols);
        for (k, &r) in perm.iter().enumerate() {
            for c in 0..self.cols {
                out.set(k, c, self.get(r, c).clone());
            }
        }
        out
    }

    /// `M * v` for a column vector of polynomials.
    pub fn apply(&self, v: &[Polynomial<F>]) -> Result<Vec<Polynomial<F>>> {
        if v.len() != self.cols {
            return Err(Error::OutOfRange(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        (0..self.rows)
            .map(|r| {
                let mut acc = Polynomial::zero(&self.ring);
                for (c, x) in v.iter().enumerate() {
                    let e = self.get(r, c);
                    if !e.is_zero() && !x.is_zero() {
                        acc = acc.add(&e.mul(x)?)?;
                    }
                }
                Ok(acc)
            })
            .collect()
    }

    /// All `k x k` minors built from the first `k` rows, keyed by the
    /// ascending column subset.
    pub fn maximal_minors(&self) -> Vec<(Vec<usize>, Polynomial<F>)> {
        let k = self.rows;
        if k == 0 || k > self.cols {
            return Vec::new();
        }
        // Laplace expansion along the last row, building up row by row:
        // level r holds the minors of rows 0..r for every r-subset of columns.
        let mut level: HashMap<Vec<usize>, Polynomial<F>> = HashMap::new();
        level.insert(Vec::new(), Polynomial::one(&self.ring));
        for r in 0..k {
            let mut next = HashMap::new();
            for subset in subsets(self.cols, r + 1) {
                let mut acc = Polynomial::zero(&self.ring);
                for (pos, &c) in subset.iter().enumerate() {
                    let e = self.get(r, c);
                    if e.is_zero() {
                        continue;
                    }
                    let mut rest = subset.clone();
                    rest.remove(pos);
                    let sub = &level[&rest];
                    if sub.is_zero() {
                        continue;
                    }
                    let term = e.mul(sub).expect("same ring");
                    // sign of the cofactor at (r, pos) inside an (r+1)-minor
                    acc = if (r + pos) % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    }
                    .expect("same ring");
                }
                next.insert(subset, acc);
            }
            level = next;
        }
        let mut out: Vec<_> = level.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }
}

/// Ascending `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                cur[i] += 1;
                for j in i + 1..k {
                    cur[j] = cur[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl<F: Field> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|p| p.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

impl<F: Field> fmt::Debug for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Rationals;

    fn mat(rows: &[&[&str]]) -> PolyMatrix<Rationals> {
        let ring = Ring::projective(Rationals, 2);
        let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
        PolyMatrix::parse(&ring, &rows).unwrap()
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn two_by_two_minors() {
        let m = mat(&[&["X", "Y", "Z"], &["Y", "Z", "X"]]);
        let minors = m.maximal_minors();
        assert_eq!(minors.len(), 3);
        assert_eq!(minors[0].0, vec![0, 1]);
        assert_eq!(minors[0].1.to_string(), "-Y^2 + X*Z");
        assert_eq!(minors[2].1.to_string(), "X*Y - Z^2");
    }

    #[test]
    fn three_by_three_determinant() {
        let m = mat(&[&["X", "0", "0"], &["0", "Y", "0"], &["0", "0", "Z"]]);
        let minors = m.maximal_minors();
        assert_eq!(minors.len(), 1);
        assert_eq!(minors[0].1.to_string(), "X*Y*Z");
    }

    #[test]
    fn apply_row() {
        let m = mat(&[&["X", "Y"]]);
        let ring = m.ring().clone();
        let v = vec![Polynomial::var(&ring, 1), Polynomial::var(&ring, 0).neg()];
        assert!(m.apply(&v).unwrap()[0].is_zero());
    }
}
