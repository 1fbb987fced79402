//! Kernel bundles `0 -> E -> ⊕ O(a_i) -> ⊕ O(b_j) -> 0` on `P^N`.

use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, PolyMatrix, Polynomial, PrimeField, Rationals, Ring};
use crate::error::{Error, Result, ValidationIssue};
use crate::limits::Limits;
use crate::modgb::{is_irrelevant_primary, kernel_dim_linalg, GradedFreeModule};
use crate::rational::{q, serde_q, Q};

/// A kernel bundle given by twist lists and an `m x n` presenting matrix.
///
/// Twists are kept sorted non-increasing (columns and rows permuted
/// along), so two presentations differing only by such a permutation are
/// stored identically. Degrees always come from the twist lists: a zero
/// entry is simply the zero map `O(a_i) -> O(b_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelBundle<F: Field> {
    ring: Arc<Ring<F>>,
    a: Vec<i64>,
    b: Vec<i64>,
    matrix: PolyMatrix<F>,
}

/// Stable permutation sorting `v` non-increasing.
fn sort_perm(v: &[i64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&x, &y| v[y].cmp(&v[x]));
    idx
}

impl<F: Field> KernelBundle<F> {
    /// Builds a bundle; only the matrix shape is checked here, the
    /// remaining rules live in [`KernelBundle::validate`].
    pub fn new(ring: &Arc<Ring<F>>, a: Vec<i64>, b: Vec<i64>, matrix: PolyMatrix<F>) -> Result<Self> {
        if matrix.nrows() != b.len() || matrix.ncols() != a.len() {
            return Err(Error::InvalidBundle(vec![ValidationIssue::Shape {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                n: a.len(),
                m: b.len(),
            }]));
        }
        if **matrix.ring() != **ring {
            return Err(Error::RingMismatch);
        }
        let pa = sort_perm(&a);
        let pb = sort_perm(&b);
        let matrix = matrix.permute_columns(&pa).permute_rows(&pb);
        Ok(KernelBundle {
            ring: ring.clone(),
            a: pa.iter().map(|&i| a[i]).collect(),
            b: pb.iter().map(|&j| b[j]).collect(),
            matrix,
        })
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        &self.ring
    }

    /// Dimension `N` of the projective space.
    pub fn n_dim(&self) -> usize {
        self.ring.n_dim()
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn matrix(&self) -> &PolyMatrix<F> {
        &self.matrix
    }

    pub fn rank(&self) -> i64 {
        self.a.len() as i64 - self.b.len() as i64
    }

    pub fn c1(&self) -> i64 {
        self.a.iter().sum::<i64>() - self.b.iter().sum::<i64>()
    }

    pub fn slope(&self) -> Q {
        Q::new(self.c1().into(), self.rank().into())
    }

    /// The module `⊕ R(a_i)` carrying global sections of `⊕ O(a_i)`.
    pub fn source_module(&self) -> Arc<GradedFreeModule<F>> {
        GradedFreeModule::from_twists(&self.ring, &self.a)
    }

    pub fn target_module(&self) -> Arc<GradedFreeModule<F>> {
        GradedFreeModule::from_twists(&self.ring, &self.b)
    }

    /// Every rule violated by the presentation; with `check_surjectivity`
    /// the maximal minors must generate an ideal primary to `R_+`.
    pub fn issues(&self, check_surjectivity: bool, limits: &Limits) -> Result<Vec<ValidationIssue>> {
        let mut out = Vec::new();
        let (n, m) = (self.a.len(), self.b.len());
        if self.n_dim() < 2 {
            out.push(ValidationIssue::AmbientDimension { n_dim: self.n_dim() });
        }
        if m < 1 || n <= m {
            out.push(ValidationIssue::RankNotPositive { n, m });
        }
        for j in 0..m {
            for i in 0..n {
                let e = self.matrix.get(j, i);
                if e.is_zero() {
                    continue;
                }
                let expected = self.b[j] - self.a[i];
                if !e.is_homogeneous() {
                    out.push(ValidationIssue::NonHomogeneousEntry { row: j, col: i });
                } else if e.is_constant() {
                    out.push(ValidationIssue::ConstantEntry { row: j, col: i });
                } else {
                    let d = e.degree().expect("nonzero");
                    if d as i64 != expected {
                        out.push(ValidationIssue::DegreeMismatch {
                            row: j,
                            col: i,
                            expected,
                            found: d,
                        });
                    }
                }
            }
        }
        if check_surjectivity && out.is_empty() {
            let minors: Vec<Polynomial<F>> = self
                .matrix
                .maximal_minors()
                .into_iter()
                .map(|(_, p)| p)
                .filter(|p| !p.is_zero())
                .collect();
            if minors.is_empty() || !is_irrelevant_primary(&self.ring, &minors, limits)? {
                out.push(ValidationIssue::NotSurjective);
            }
        }
        Ok(out)
    }

    pub fn validate(&self, check_surjectivity: bool, limits: &Limits) -> Result<()> {
        let issues = self.issues(check_surjectivity, limits)?;
        if issues.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidBundle(issues))
        }
    }

    pub fn invariants(&self) -> Invariants {
        Invariants::from_twists(&self.a, &self.b)
    }

    /// `E(c)`: every twist shifted by `c`.
    pub fn twist(&self, c: i64) -> Self {
        KernelBundle {
            ring: self.ring.clone(),
            a: self.a.iter().map(|x| x + c).collect(),
            b: self.b.iter().map(|x| x + c).collect(),
            matrix: self.matrix.clone(),
        }
    }

    /// Pullback along `X_i -> X_i^k`.
    pub fn pullback_powers(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange("pullback needs k >= 1".into()));
        }
        Ok(KernelBundle {
            ring: self.ring.clone(),
            a: self.a.iter().map(|x| x * k as i64).collect(),
            b: self.b.iter().map(|x| x * k as i64).collect(),
            matrix: self.matrix.map_entries(|p| p.substitute_powers(k))?,
        })
    }

    /// The same bundle over a different field, mapping each coefficient.
    pub fn map_field<G: Field>(&self, field: G, f: impl Fn(&F::Elem) -> Result<G::Elem>) -> Result<KernelBundle<G>> {
        let ring = self.ring.with_field(field);
        let mut rows = Vec::with_capacity(self.b.len());
        for j in 0..self.b.len() {
            rows.push(
                self.matrix
                    .row(j)
                    .iter()
                    .map(|p| p.map_coeffs(&ring, &f))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(KernelBundle {
            a: self.a.clone(),
            b: self.b.clone(),
            matrix: PolyMatrix::from_rows(&ring, rows)?,
            ring,
        })
    }

    /// `h^0(E(t))` by degreewise elimination.
    pub fn sections(&self, t: i64, limits: &Limits) -> Result<usize> {
        kernel_dim_linalg(&self.matrix, &self.source_module(), &self.target_module(), t, limits)
    }

    /// Whether this is a syzygy bundle: one row, target twist `c`, entries
    /// of degree `c - a_i`.
    pub fn is_syzygy_shape(&self) -> bool {
        self.b.len() == 1
    }
}

impl KernelBundle<Rationals> {
    /// Reduction modulo `p`; fails when a denominator vanishes mod `p`.
    pub fn reduce_mod(&self, field: PrimeField) -> Result<KernelBundle<PrimeField>> {
        self.map_field(field, |c| field.from_ratio(c.numer(), c.denom()))
    }
}

/// Homogeneous generators `f_1..f_n` with a twist `c`, presenting
/// `Syz(f_1, ..., f_n)(c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SyzygyBundleSpec<F: Field> {
    pub generators: Vec<Polynomial<F>>,
    pub twist: i64,
}

impl<F: Field> SyzygyBundleSpec<F> {
    pub fn new(generators: Vec<Polynomial<F>>, twist: i64) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() || !g.is_homogeneous() {
                return Err(Error::NonHomogeneous(format!(
                    "generator {} (`{g}`) must be nonzero and homogeneous",
                    i + 1
                )));
            }
            if g.is_constant() {
                return Err(Error::InvalidBundle(vec![ValidationIssue::ConstantEntry {
                    row: 0,
                    col: i,
                }]));
            }
        }
        if generators.is_empty() {
            return Err(Error::OutOfRange("a syzygy bundle needs generators".into()));
        }
        Ok(SyzygyBundleSpec { generators, twist })
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.generators
            .iter()
            .map(|g| g.homogeneous_degree().expect("checked") as i64)
            .collect()
    }

    pub fn ring(&self) -> &Arc<Ring<F>> {
        self.generators[0].ring()
    }

    /// The kernel presentation: `a_i = c - d_i`, `b = (c)`, the single row
    /// holding the generators (sorted by ascending degree).
    pub fn to_bundle(&self) -> Result<KernelBundle<F>> {
        let ring = self.ring().clone();
        let a: Vec<i64> = self.degrees().iter().map(|d| self.twist - d).collect();
        let matrix = PolyMatrix::from_rows(&ring, vec![self.generators.clone()])?;
        KernelBundle::new(&ring, a, vec![self.twist], matrix)
    }

    /// The discriminant via `(Σ d)^2 - (n - 1) Σ d^2`.
    pub fn discriminant(&self) -> Q {
        let d = self.degrees();
        let s: i64 = d.iter().sum();
        let s2: i64 = d.iter().map(|x| x * x).sum();
        q(s * s - (d.len() as i64 - 1) * s2)
    }
}

pub fn from_syzygy<F: Field>(spec: &SyzygyBundleSpec<F>) -> Result<KernelBundle<F>> {
    spec.to_bundle()
}

/// Numerical invariants of a kernel bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub rank: i64,
    pub c1: i64,
    #[serde(with = "serde_q")]
    pub slope: Q,
    #[serde(with = "serde_q")]
    pub c2: Q,
    #[serde(with = "serde_q")]
    pub discriminant: Q,
}

impl Invariants {
    /// From the Chern polynomial `Π(1 + a_i h) / Π(1 + b_j h)`.
    pub fn from_twists(a: &[i64], b: &[i64]) -> Self {
        let rank = a.len() as i64 - b.len() as i64;
        let sa: i64 = a.iter().sum();
        let sb: i64 = b.iter().sum();
        let sa2: i64 = a.iter().map(|x| x * x).sum();
        let sb2: i64 = b.iter().map(|x| x * x).sum();
        let c1 = sa - sb;
        // e_2(a) - e_1(a) e_1(b) + h_2(b), each half-integral part cancels
        let c2 = Q::new(((sa * sa - sa2) - 2 * sa * sb + (sb * sb + sb2)).into(), 2.into());
        let r = q(rank);
        let discriminant = q(2) * &r * &c2 - (&r - q(1)) * q(c1 * c1);
        let slope = if rank == 0 {
            Q::zero()
        } else {
            Q::new(c1.into(), rank.into())
        };
        Invariants {
            rank,
            c1,
            slope,
            c2,
            discriminant,
        }
    }
}
