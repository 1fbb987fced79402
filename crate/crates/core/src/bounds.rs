//! Effective restriction degrees and closure inclusion thresholds.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Polynomial, PrimeField, Ring};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::modgb::{ideal_groebner, ideal_membership, is_irrelevant_primary};
use crate::rational::{binomial, ceil_i64, floor_i64, q, serde_q, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    /// Semistable restriction to `c` general degree-`k` divisors, char 0.
    Flenner,
    /// Stable restriction to any smooth divisor of degree `k`.
    Langer,
    /// Strongly semistable restriction to the general degree-`k`
    /// hypersurface, positive characteristic.
    LangerStrong,
}

impl std::str::FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "flenner" => Ok(Theorem::Flenner),
            "langer" => Ok(Theorem::Langer),
            "langerstrong" => Ok(Theorem::LangerStrong),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown theorem `{s}` (flenner, langer, langer-strong)"),
            }),
        }
    }
}

/// What is known about the bundle the bound is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Known {
    Semistable,
    Stable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundInput {
    pub n_dim: i64,
    pub rank: i64,
    #[serde(with = "serde_q")]
    pub discriminant: Q,
    /// Codimension of the complete intersection (Flenner only).
    pub c: i64,
    pub characteristic: u64,
    pub known: Known,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictionBound {
    pub theorem: Theorem,
    pub input: BoundInput,
    pub k_min: i64,
    pub conclusion: String,
}

fn max_rank_term(r: i64) -> Q {
    let t = Q::new(BigInt::from(r * r - 1), BigInt::from(4));
    if t > q(1) {
        t
    } else {
        q(1)
    }
}

fn binom_q(n: i64, k: i64) -> Q {
    Q::from_integer(binomial(n, k))
}

/// Whether degree `k` satisfies the theorem's inequalities.
pub fn satisfies(theorem: Theorem, input: &BoundInput, k: i64) -> bool {
    if k < 1 {
        return false;
    }
    let n = input.n_dim;
    let r = input.rank;
    let kq = q(k);
    match theorem {
        Theorem::Flenner => (binom_q(k + n, n) - q(input.c * k) - q(1)) / &kq > max_rank_term(r),
        Theorem::Langer => kq > langer_rhs(r, &input.discriminant),
        Theorem::LangerStrong => {
            let a = {
                let poly = q(n.pow(5) - 2 * n.pow(3) + 2 * n + 1);
                let m = if input.discriminant > poly {
                    input.discriminant.clone()
                } else {
                    poly
                };
                kq > (m / q(2))
            };
            let b = (binom_q(k + n, n) - q(1)) / &kq > max_rank_term(r) + q(1);
            a && b
        }
    }
}

fn langer_rhs(r: i64, delta: &Q) -> Q {
    Q::new(BigInt::from(r - 1), BigInt::from(r)) * delta + Q::new(BigInt::from(1), BigInt::from(r * (r - 1)))
}

/// Smallest `k` satisfying the theorem.
///
/// The Langer bound is solved in closed form. The binomial conditions are
/// increasing in `k` (`(C(k+N, N) - 1)/k` is the mean of an increasing
/// sequence), so the first hit of an ascending search is the minimum.
pub fn restriction_bound(theorem: Theorem, input: BoundInput) -> Result<RestrictionBound> {
    if input.rank < 1 || input.n_dim < 2 {
        return Err(Error::OutOfRange("need rank >= 1 and N >= 2".into()));
    }
    let conclusion = match theorem {
        Theorem::Flenner => {
            if input.characteristic != 0 {
                return Err(Error::Hypothesis("Flenner's bound needs characteristic 0".into()));
            }
            if input.c < 1 || input.c > input.n_dim - 1 {
                return Err(Error::OutOfRange(format!("need 1 <= c <= N - 1, got c = {}", input.c)));
            }
            format!(
                "semistable on the complete intersection of {} general divisors of degree k",
                input.c
            )
        }
        Theorem::Langer => {
            if input.known != Known::Stable {
                return Err(Error::Hypothesis("Langer's bound needs a stable bundle".into()));
            }
            if input.rank < 2 {
                return Err(Error::OutOfRange("Langer's bound needs rank >= 2".into()));
            }
            "stable on every smooth divisor of degree k with torsion-free restriction".into()
        }
        Theorem::LangerStrong => {
            if input.characteristic == 0 {
                return Err(Error::Hypothesis(
                    "the strong bound needs positive characteristic".into(),
                ));
            }
            if input.rank < 2 {
                return Err(Error::OutOfRange("the strong bound needs rank >= 2".into()));
            }
            "strongly semistable on the general hypersurface of degree k".into()
        }
    };
    let k_min = match theorem {
        Theorem::Langer => (floor_i64(&langer_rhs(input.rank, &input.discriminant)) + 1).max(1),
        _ => {
            let start = match theorem {
                Theorem::LangerStrong => {
                    let poly = q(input.n_dim.pow(5) - 2 * input.n_dim.pow(3) + 2 * input.n_dim + 1);
                    let m = if input.discriminant > poly {
                        input.discriminant.clone()
                    } else {
                        poly
                    };
                    (floor_i64(&(m / q(2))) + 1).max(1)
                }
                _ => 1,
            };
            (start..)
                .find(|&k| satisfies(theorem, &input, k))
                .expect("unbounded search")
        }
    };
    Ok(RestrictionBound {
        theorem,
        input,
        k_min,
        conclusion,
    })
}

/// Why the syzygy bundle may be treated as (strongly) semistable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "note", rename_all = "snake_case")]
pub enum Certificate {
    /// Semistability decided by the section test.
    Checked(String),
    /// A user-asserted strong semistability justification.
    Asserted(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureThreshold {
    /// `(d_1 + ... + d_n) / (n - 1)`.
    #[serde(with = "serde_q")]
    pub tau: Q,
    /// Every degree `m >= min_degree` lies in the closure.
    pub min_degree: i64,
    pub certificate: Certificate,
}

/// The degree above which every form lies in the closure.
pub fn closure_threshold<F: Field>(
    generators: &[Polynomial<F>],
    certificate: Option<Certificate>,
    limits: &Limits,
) -> Result<ClosureThreshold> {
    if generators.len() < 2 {
        return Err(Error::OutOfRange("need at least two generators".into()));
    }
    let Some(certificate) = certificate else {
        return Err(Error::Hypothesis(
            "a semistability certificate for the syzygy bundle is required".into(),
        ));
    };
    let ring = generators[0].ring();
    if ring.field().characteristic() > 0 && !matches!(certificate, Certificate::Asserted(_)) {
        return Err(Error::Hypothesis(
            "in positive characteristic strong semistability must be asserted".into(),
        ));
    }
    if !is_irrelevant_primary(ring, generators, limits)? {
        return Err(Error::Hypothesis("the ideal is not R_+-primary".into()));
    }
    let degs: Vec<i64> = generators
        .iter()
        .map(|g| {
            g.homogeneous_degree()
                .map(|d| d as i64)
                .ok_or_else(|| Error::NonHomogeneous(g.to_string()))
        })
        .collect::<Result<_>>()?;
    let tau = tau_of(&degs);
    Ok(ClosureThreshold {
        min_degree: ceil_i64(&tau),
        tau,
        certificate,
    })
}

pub fn tau_of(degrees: &[i64]) -> Q {
    Q::new(
        BigInt::from(degrees.iter().sum::<i64>()),
        BigInt::from(degrees.len() as i64 - 1),
    )
}

/// Genus of a smooth plane curve of degree `d`.
pub fn plane_curve_genus(d: i64) -> i64 {
    (d - 1) * (d - 2) / 2
}

/// How far a Frobenius membership answer reaches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// `p > 4(g-1)(n-1)^3`: the test with `q = p` decides.
    LargePrime,
    /// `p < 4(g-1)(n-1)^3` and `q > 6g`: the test decides.
    LargePower,
    /// Outside both ranges, including equality `p = 4(g-1)(n-1)^3`:
    /// a positive answer still puts `f` in the Frobenius closure, a
    /// negative one decides nothing.
    SufficientOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureAnswer {
    /// `f ∈ I`.
    InIdeal,
    /// `deg f >= τ`.
    AboveThreshold,
    FrobeniusPower {
        q: u64,
        member: bool,
        regime: Regime,
        /// `4(g-1)(n-1)^3`.
        prime_bound: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub threshold: ClosureThreshold,
    pub genus: i64,
    pub answer: ClosureAnswer,
    /// `Some(true)`/`Some(false)` when the answer decides closure membership.
    pub in_closure: Option<bool>,
}

/// Data for a closure query in `K[X_0..X_N] / (curve)`.
#[derive(Debug, Clone)]
pub struct ClosureQuery {
    pub generators: Vec<Polynomial<PrimeField>>,
    pub element: Polynomial<PrimeField>,
    /// Equation of the plane curve, if the ring is its coordinate ring.
    pub curve: Option<Polynomial<PrimeField>>,
    /// Genus; defaults to the plane-curve formula when a curve is given.
    pub genus: Option<i64>,
    pub certificate: Option<Certificate>,
}

fn is_power_of(q: u64, p: u64) -> bool {
    let mut v = q;
    while v > 1 && v.is_multiple_of(p) {
        v /= p;
    }
    v == 1 && q > 1
}

/// Decides `f^q ∈ I^{[q]}` (plus the curve equation) and labels the regime.
pub fn frobenius_membership(query: &ClosureQuery, qpow: u64, limits: &Limits) -> Result<ClosureReport> {
    let ring: &Arc<Ring<PrimeField>> = query.element.ring();
    let p = ring.field().characteristic();
    if !is_power_of(qpow, p) {
        return Err(Error::OutOfRange(format!(
            "{qpow} is not a power of the characteristic {p}"
        )));
    }
    let genus = match (query.genus, &query.curve) {
        (Some(g), _) => g,
        (None, Some(c)) => plane_curve_genus(
            c.homogeneous_degree()
                .ok_or_else(|| Error::NonHomogeneous(c.to_string()))? as i64,
        ),
        (None, None) => return Err(Error::Hypothesis("a genus or a curve equation is required".into())),
    };
    let mut base = query.generators.clone();
    base.extend(query.curve.iter().cloned());
    let threshold = closure_threshold(&query.generators, query.certificate.clone(), limits)?;
    let m = query
        .element
        .homogeneous_degree()
        .ok_or_else(|| Error::NonHomogeneous(query.element.to_string()))? as i64;
    let mk = |answer, in_closure| ClosureReport {
        threshold: threshold.clone(),
        genus,
        answer,
        in_closure,
    };
    if query.element.is_zero() || ideal_membership(&query.element, &ideal_groebner(ring, &base, limits)?)? {
        return Ok(mk(ClosureAnswer::InIdeal, Some(true)));
    }
    if q(m) >= threshold.tau {
        return Ok(mk(ClosureAnswer::AboveThreshold, Some(true)));
    }
    let mut frob: Vec<Polynomial<PrimeField>> = query.generators.iter().map(|g| g.pow(qpow as u32)).collect();
    frob.extend(query.curve.iter().cloned());
    let gb = ideal_groebner(ring, &frob, limits)?;
    let member = ideal_membership(&query.element.pow(qpow as u32), &gb)?;
    let n = query.generators.len() as i64;
    let prime_bound = 4 * (genus - 1) * (n - 1).pow(3);
    let regime = if (p as i64) > prime_bound && qpow == p {
        Regime::LargePrime
    } else if (p as i64) < prime_bound && qpow as i64 > 6 * genus {
        Regime::LargePower
    } else {
        Regime::SufficientOnly
    };
    let in_closure = match (member, regime) {
        (true, _) => Some(true),
        (false, Regime::SufficientOnly) => None,
        (false, _) => Some(false),
    };
    Ok(mk(
        ClosureAnswer::FrobeniusPower {
            q: qpow,
            member,
            regime,
            prime_bound,
        },
        in_closure,
    ))
}
