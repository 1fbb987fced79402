//! Presentations of tensor, exterior and symmetric powers of a kernel
//! bundle as kernels of maps between sums of line bundles.
//!
//! Index orders: tuples lexicographic, subsets ranked colexicographically,
//! multisets (weakly increasing lists) lexicographic.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, PolyMatrix, Polynomial};
use crate::bundle::KernelBundle;
use crate::error::{Error, ResourceKind, Result};
use crate::modgb::{GradedFreeModule, ModuleElement};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Tensor,
    Exterior,
    Symmetric,
}

impl std::str::FromStr for PowerKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "tensor" => Ok(PowerKind::Tensor),
            "exterior" | "wedge" => Ok(PowerKind::Exterior),
            "symmetric" | "sym" => Ok(PowerKind::Symmetric),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown power kind `{s}` (tensor, exterior, symmetric)"),
            }),
        }
    }
}

impl std::fmt::Display for PowerKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PowerKind::Tensor => "tensor",
            PowerKind::Exterior => "exterior",
            PowerKind::Symmetric => "symmetric",
        };
        write!(f, "{s}")
    }
}

/// `0 -> P^q(E) -> ⊕ O(source_twists) -> ⊕ O(target_twists)`.
#[derive(Debug, Clone)]
pub struct PowerPresentation<F: Field> {
    pub kind: PowerKind,
    pub q: usize,
    /// Index tuple, subset or multiset of each source basis element.
    pub source_index: Vec<Vec<usize>>,
    pub source_twists: Vec<i64>,
    pub target_twists: Vec<i64>,
    pub matrix: PolyMatrix<F>,
}

impl<F: Field> PowerPresentation<F> {
    pub fn source_module(&self) -> Arc<GradedFreeModule<F>> {
        GradedFreeModule::from_twists(self.matrix.ring(), &self.source_twists)
    }

    pub fn target_module(&self) -> Arc<GradedFreeModule<F>> {
        GradedFreeModule::from_twists(self.matrix.ring(), &self.target_twists)
    }
}

/// All `q`-tuples over `0..n`, lexicographic.
pub fn tuples(n: usize, q: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..q {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Rank of a tuple in [`tuples`] order.
pub fn tuple_rank(n: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &i| acc * n + i)
}

/// All `k`-subsets of `0..n` as ascending lists, in colexicographic order.
pub fn subsets_colex(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = crate::algebra::matrix::subsets(n, k);
    out.sort_by(|x, y| x.iter().rev().cmp(y.iter().rev()));
    out
}

/// All weakly increasing `k`-lists over `0..n`, lexicographic.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Largest dense presentation matrix a power may allocate.
pub const MAX_ENTRIES: usize = 50_000_000;

fn dense_matrix<F: Field>(bundle: &KernelBundle<F>, rows: usize, cols: usize) -> Result<PolyMatrix<F>> {
    if rows.saturating_mul(cols) > MAX_ENTRIES {
        return Err(Error::Resource(ResourceKind::Size));
    }
    Ok(PolyMatrix::zeros(bundle.ring(), rows, cols))
}

fn rank_map(v: &[Vec<usize>]) -> HashMap<Vec<usize>, usize> {
    v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect()
}

fn twist_sum(a: &[i64], idx: &[usize]) -> i64 {
    idx.iter().map(|&i| a[i]).sum()
}

/// `q`-th tensor power: `e_α -> Σ_p Σ_j a_{j, α_p} e_{(α without p, j, p)}`.
pub fn tensor_power_matrix<F: Field>(bundle: &KernelBundle<F>, q: usize) -> Result<PowerPresentation<F>> {
    if q == 0 {
        return Err(Error::OutOfRange("power q must be >= 1".into()));
    }
    let (n, m) = (bundle.a().len(), bundle.b().len());
    let a = bundle.a();
    let src = tuples(n, q);
    let tgt_base = tuples(n, q - 1);
    let mut target_twists = Vec::with_capacity(tgt_base.len() * m * q);
    for beta in &tgt_base {
        for j in 0..m {
            for _p in 0..q {
                target_twists.push(twist_sum(a, beta) + bundle.b()[j]);
            }
        }
    }
    let mut matrix = dense_matrix(bundle, target_twists.len(), src.len())?;
    for (col, alpha) in src.iter().enumerate() {
        for p in 0..q {
            let mut beta = alpha.clone();
            let i = beta.remove(p);
            let r = tuple_rank(n, &beta);
            for j in 0..m {
                let e = bundle.matrix().get(j, i);
                if !e.is_zero() {
                    matrix.set((r * m + j) * q + p, col, e.clone());
                }
            }
        }
    }
    Ok(PowerPresentation {
        kind: PowerKind::Tensor,
        q,
        source_twists: src.iter().map(|s| twist_sum(a, s)).collect(),
        source_index: src,
        target_twists,
        matrix,
    })
}

/// `sign(i, A) = -1` iff `i` sits at an even (1-based) position of `A`.
pub fn sign(pos_zero_based: usize) -> i64 {
    if pos_zero_based % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `q`-th exterior power, `1 <= q < rank`:
/// `e_A -> Σ_{i ∈ A} Σ_j sign(i, A) a_{ji} e_{(A - {i}, j)}`.
pub fn exterior_power_matrix<F: Field>(bundle: &KernelBundle<F>, q: usize) -> Result<PowerPresentation<F>> {
    let rank = bundle.rank();
    if q == 0 || q as i64 >= rank {
        return Err(Error::OutOfRange(format!(
            "exterior power needs 1 <= q < rank = {rank}, got {q}"
        )));
    }
    let (n, m) = (bundle.a().len(), bundle.b().len());
    let a = bundle.a();
    let src = subsets_colex(n, q);
    let tgt = subsets_colex(n, q - 1);
    let tgt_rank = rank_map(&tgt);
    let mut target_twists = Vec::with_capacity(tgt.len() * m);
    for bset in &tgt {
        for j in 0..m {
            target_twists.push(twist_sum(a, bset) + bundle.b()[j]);
        }
    }
    let mut matrix = dense_matrix(bundle, target_twists.len(), src.len())?;
    for (col, aset) in src.iter().enumerate() {
        for (pos, &i) in aset.iter().enumerate() {
            let mut bset = aset.clone();
            bset.remove(pos);
            let r = tgt_rank[&bset];
            for j in 0..m {
                let e = bundle.matrix().get(j, i);
                if !e.is_zero() {
                    let v = if sign(pos) < 0 { e.neg() } else { e.clone() };
                    matrix.set(r * m + j, col, v);
                }
            }
        }
    }
    Ok(PowerPresentation {
        kind: PowerKind::Exterior,
        q,
        source_twists: src.iter().map(|s| twist_sum(a, s)).collect(),
        source_index: src,
        target_twists,
        matrix,
    })
}

/// `q`-th symmetric power: `e_M -> Σ_{i ∈ M} Σ_j a_{ji} e_{(M - {i}, j)}`,
/// one term per distinct `i`. Refused when the characteristic divides `q`.
pub fn symmetric_power_matrix<F: Field>(bundle: &KernelBundle<F>, q: usize) -> Result<PowerPresentation<F>> {
    if q == 0 {
        return Err(Error::OutOfRange("power q must be >= 1".into()));
    }
    let p = bundle.ring().field().characteristic();
    if p != 0 && (q as u64).is_multiple_of(p) {
        return Err(Error::Characteristic { char: p, q });
    }
    let (n, m) = (bundle.a().len(), bundle.b().len());
    let a = bundle.a();
    let src = multisets(n, q);
    let tgt = multisets(n, q - 1);
    let tgt_rank = rank_map(&tgt);
    let mut target_twists = Vec::with_capacity(tgt.len() * m);
    for mset in &tgt {
        for j in 0..m {
            target_twists.push(twist_sum(a, mset) + bundle.b()[j]);
        }
    }
    let mut matrix = dense_matrix(bundle, target_twists.len(), src.len())?;
    for (col, mset) in src.iter().enumerate() {
        let mut distinct = mset.clone();
        distinct.dedup();
        for &i in &distinct {
            let mut rest = mset.clone();
            let pos = rest.iter().position(|&x| x == i).expect("member");
            rest.remove(pos);
            let r = tgt_rank[&rest];
            for j in 0..m {
                let e = bundle.matrix().get(j, i);
                if !e.is_zero() {
                    matrix.set(r * m + j, col, e.clone());
                }
            }
        }
    }
    Ok(PowerPresentation {
        kind: PowerKind::Symmetric,
        q,
        source_twists: src.iter().map(|s| twist_sum(a, s)).collect(),
        source_index: src,
        target_twists,
        matrix,
    })
}

pub fn power_matrix<F: Field>(bundle: &KernelBundle<F>, kind: PowerKind, q: usize) -> Result<PowerPresentation<F>> {
    match kind {
        PowerKind::Tensor => tensor_power_matrix(bundle, q),
        PowerKind::Exterior => exterior_power_matrix(bundle, q),
        PowerKind::Symmetric => symmetric_power_matrix(bundle, q),
    }
}

fn product<F: Field>(
    ring: &Arc<crate::algebra::Ring<F>>,
    factors: impl Iterator<Item = Polynomial<F>>,
) -> Polynomial<F> {
    let mut acc = Polynomial::one(ring);
    for f in factors {
        if acc.is_zero() {
            break;
        }
        acc = acc.mul(&f).expect("same ring");
    }
    acc
}

fn permutations(q: usize) -> Vec<(Vec<usize>, i64)> {
    // Heap-free recursive generation with parity tracking
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, q: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == q {
            let mut inv = 0;
            for x in 0..q {
                for y in x + 1..q {
                    if cur[x] > cur[y] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for i in 0..q {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, q, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; q], q, &mut out);
    out
}

/// Expansion of `s_1 ⊗ ... ⊗ s_q`, `s_1 ∧ ... ∧ s_q` or `s_1 · ... · s_q`
/// in the source basis of `pres`. The symmetric product is expanded with
/// the permanent of `(s_p[M_k])`.
pub fn expand_product<F: Field>(
    pres: &PowerPresentation<F>,
    sections: &[ModuleElement<F>],
) -> Result<ModuleElement<F>> {
    if sections.len() != pres.q {
        return Err(Error::OutOfRange(format!(
            "need {} factors, got {}",
            pres.q,
            sections.len()
        )));
    }
    let ring = pres.matrix.ring();
    let perms = permutations(pres.q);
    let comps = pres
        .source_index
        .iter()
        .map(|idx| match pres.kind {
            PowerKind::Tensor => product(ring, sections.iter().zip(idx).map(|(s, &i)| s.components()[i].clone())),
            PowerKind::Exterior | PowerKind::Symmetric => {
                let mut acc = Polynomial::zero(ring);
                for (perm, sgn) in &perms {
                    let t = product(
                        ring,
                        (0..pres.q).map(|p| sections[p].components()[idx[perm[p]]].clone()),
                    );
                    let signed = pres.kind == PowerKind::Exterior && *sgn < 0;
                    acc = if signed { acc.sub(&t) } else { acc.add(&t) }.expect("same ring");
                }
                acc
            }
        })
        .collect();
    Ok(ModuleElement::new(comps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PrimeField, Rationals, Ring};
    use crate::bundle::SyzygyBundleSpec;

    fn quadrics() -> KernelBundle<Rationals> {
        let ring = Ring::projective(Rationals, 2);
        let g = ["X^2 - Y^2", "X^2 - Z^2", "X*Y", "X*Z", "Y*Z"]
            .iter()
            .map(|s| parse_polynomial(s, &ring).unwrap())
            .collect();
        SyzygyBundleSpec::new(g, 0).unwrap().to_bundle().unwrap()
    }

    #[test]
    fn enumerator_counts() {
        assert_eq!(tuples(5, 2).len(), 25);
        assert_eq!(subsets_colex(5, 2).len(), 10);
        assert_eq!(subsets_colex(4, 2)[..3], [vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(multisets(5, 2).len(), 15);
        assert_eq!(multisets(3, 2)[..3], [vec![0, 0], vec![0, 1], vec![0, 2]]);
        for (k, t) in tuples(3, 3).iter().enumerate() {
            assert_eq!(tuple_rank(3, t), k);
        }
    }

    #[test]
    fn first_powers_are_the_bundle() {
        let b = quadrics();
        for kind in [PowerKind::Tensor, PowerKind::Exterior, PowerKind::Symmetric] {
            let p = power_matrix(&b, kind, 1).unwrap();
            assert_eq!(&p.matrix, b.matrix());
            assert_eq!(p.source_twists, b.a());
            assert_eq!(p.target_twists, b.b());
        }
    }

    #[test]
    fn quadric_counts() {
        let b = quadrics();
        let t = tensor_power_matrix(&b, 2).unwrap();
        assert_eq!((t.source_twists.len(), t.target_twists.len()), (25, 10));
        assert!(t.source_twists.iter().all(|&x| x == -4));
        let e = exterior_power_matrix(&b, 2).unwrap();
        assert_eq!((e.source_twists.len(), e.target_twists.len()), (10, 5));
        assert!(e.source_twists.iter().all(|&x| x == -4));
        assert!(e.target_twists.iter().all(|&x| x == -2));
        let s = symmetric_power_matrix(&b, 2).unwrap();
        assert_eq!((s.source_twists.len(), s.target_twists.len()), (15, 5));
        assert!(exterior_power_matrix(&b, 4).is_err());
        assert!(exterior_power_matrix(&b, 0).is_err());
    }

    #[test]
    fn oversized_power_is_a_resource_error() {
        assert!(matches!(
            tensor_power_matrix(&quadrics(), 9),
            Err(Error::Resource(ResourceKind::Size))
        ));
    }

    #[test]
    fn symmetric_square_refused_in_characteristic_two() {
        let b = quadrics().reduce_mod(PrimeField::new(2).unwrap()).unwrap();
        assert!(matches!(
            symmetric_power_matrix(&b, 2),
            Err(Error::Characteristic { char: 2, q: 2 })
        ));
        assert!(symmetric_power_matrix(&b, 3).is_ok());
    }

    #[test]
    fn exterior_signs_follow_positions() {
        let b = quadrics();
        let e = exterior_power_matrix(&b, 2).unwrap();
        // A = {0, 1}: removing 0 (position 1) keeps the sign, removing 1
        // (position 2) flips it.
        let col = e.source_index.iter().position(|s| s == &vec![0, 1]).unwrap();
        assert_eq!(e.matrix.get(1, col), b.matrix().get(0, 0));
        assert_eq!(e.matrix.get(0, col), &b.matrix().get(0, 1).neg());
    }

    #[test]
    fn products_of_sections_lie_in_the_kernel() {
        let b = quadrics();
        let l = crate::Limits::default();
        let mut secs = kernel_basis_linalg_for(&b, 3, &l);
        secs.extend(kernel_basis_linalg_for(&b, 4, &l).into_iter().take(3));
        assert!(secs.len() >= 3);
        for kind in [PowerKind::Tensor, PowerKind::Exterior, PowerKind::Symmetric] {
            for q in 2..=3 {
                let pres = power_matrix(&b, kind, q).unwrap();
                let e = expand_product(&pres, &secs[..q]).unwrap();
                assert!(crate::modgb::annihilates(&pres.matrix, &e).unwrap(), "{kind} {q}");
            }
        }
        // s ∧ s vanishes
        let pres = exterior_power_matrix(&b, 2).unwrap();
        assert!(expand_product(&pres, &[secs[0].clone(), secs[0].clone()])
            .unwrap()
            .is_zero());
    }

    fn kernel_basis_linalg_for(
        b: &KernelBundle<Rationals>,
        t: i64,
        l: &crate::Limits,
    ) -> Vec<ModuleElement<Rationals>> {
        crate::modgb::kernel_basis_linalg(b.matrix(), &b.source_module(), &b.target_module(), t, l).unwrap()
    }
}
