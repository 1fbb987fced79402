#![allow(dead_code)]

use std::sync::Arc;

use kbundle::algebra::{parse_polynomial, Field, Monomial, PolyMatrix, Polynomial, Rationals, Ring};
use kbundle::bundle::{KernelBundle, SyzygyBundleSpec};
use rand::Rng;

pub fn plane() -> Arc<Ring<Rationals>> {
    Ring::projective(Rationals, 2)
}

pub fn syzygy(gens: &[&str], twist: i64) -> SyzygyBundleSpec<Rationals> {
    let ring = plane();
    let g = gens.iter().map(|s| parse_polynomial(s, &ring).unwrap()).collect();
    SyzygyBundleSpec::new(g, twist).unwrap()
}

pub const QUADRICS: [&str; 5] = ["X^2 - Y^2", "X^2 - Z^2", "X*Y", "X*Z", "Y*Z"];
pub const QUARTICS: [&str; 5] = ["X^4 - Y^4", "X^4 - Z^4", "X^2*Y^2", "X^2*Z^2", "Y^2*Z^2"];
pub const SEXTICS: [&str; 7] = [
    "X^6 - Y^4*Z^2",
    "Y^6 - X^2*Z^4",
    "X^4*Y^2 - Z^6",
    "X^2*Y^4",
    "Y^2*Z^4",
    "X^4*Z^2",
    "X^2*Y^2*Z^2",
];

/// Dual of the syzygy sheaf of `X^2, Y^2, XY, XZ, YZ`, presented by the
/// transpose of its resolution matrix.
pub fn dual_five_monomials() -> KernelBundle<Rationals> {
    let ring = plane();
    let rows = [["X", "-Y", "-Y", "0", "-Z", "0"], ["0", "0", "X", "-Y", "0", "Z"]];
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    let m = PolyMatrix::parse(&ring, &rows).unwrap();
    KernelBundle::new(&ring, vec![3; 6], vec![4, 4], m).unwrap()
}

pub fn random_monomial<R: Rng>(rng: &mut R, nvars: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; nvars];
    for _ in 0..degree {
        e[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::new(e)
}

/// A random form of the given degree with small integer coefficients.
pub fn random_form<F: Field, R: Rng>(rng: &mut R, ring: &Arc<Ring<F>>, degree: u32, terms: usize) -> Polynomial<F> {
    if degree == 0 {
        let c = rng.gen_range(1..4);
        return Polynomial::constant(ring, ring.field().from_i64(c));
    }
    let t = (0..terms)
        .map(|_| {
            let c = rng.gen_range(-3i64..=3);
            (
                random_monomial(rng, ring.nvars(), degree),
                ring.field().from_i64(if c == 0 { 1 } else { c }),
            )
        })
        .collect();
    Polynomial::from_terms(ring, t)
}

/// A random presentation with entry degrees in `1..=2` (zero allowed),
/// not necessarily surjective.
pub fn random_presentation<R: Rng>(
    rng: &mut R,
    ring: &Arc<Ring<Rationals>>,
    n: usize,
    m: usize,
) -> KernelBundle<Rationals> {
    let b: Vec<i64> = (0..m).map(|_| rng.gen_range(0..=1)).collect();
    let bmin = *b.iter().min().unwrap();
    let a: Vec<i64> = (0..n).map(|_| bmin - rng.gen_range(1..=2)).collect();
    let mut mat = PolyMatrix::zeros(ring, m, n);
    for (j, bj) in b.iter().enumerate() {
        for (i, ai) in a.iter().enumerate() {
            let d = bj - ai;
            if d >= 1 && rng.gen_bool(0.85) {
                mat.set(j, i, random_form(rng, ring, d as u32, 3));
            }
        }
    }
    KernelBundle::new(ring, a, b, mat).unwrap()
}

/// Pure powers of `X, Y, Z` plus up to three further monomials, none
/// dividing another; degrees at most 4.
pub fn monomial_family<R: Rng>(rng: &mut R) -> Vec<String> {
    let vars = ["X", "Y", "Z"];
    let n = rng.gen_range(3..=6);
    let mut gens: Vec<Vec<u32>> = (0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = rng.gen_range(1..=4);
            e
        })
        .collect();
    for _ in 0..200 {
        if gens.len() >= n {
            break;
        }
        let d = rng.gen_range(2..=4);
        let m = random_monomial(rng, 3, d).exps().to_vec();
        let divisible = gens
            .iter()
            .any(|g| g.iter().zip(&m).all(|(a, b)| a <= b) || m.iter().zip(g).all(|(a, b)| a <= b));
        if !divisible {
            gens.push(m);
        }
    }
    gens.iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .zip(vars)
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| format!("{v}^{k}"))
                .collect();
            parts.join("*")
        })
        .collect()
}
