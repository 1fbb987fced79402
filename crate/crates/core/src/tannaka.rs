//! Section-dimension fingerprints of tensor powers of slope-0 bundles and
//! the small decision table for their Tannaka dual groups.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, PrimeField, Rationals, PRIME_A, PRIME_B};
use crate::bundle::KernelBundle;
use crate::engine::{Engine, GradedMap};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::powers::{power_matrix, PowerKind};
use crate::rational::as_integer;
use crate::stability::StabilityStatus;

/// `h^0((P^q E)(k))`.
pub fn section_dim_power<F: Field>(
    bundle: &KernelBundle<F>,
    kind: PowerKind,
    q: usize,
    k: i64,
    engine: Engine,
    limits: &Limits,
) -> Result<usize> {
    let pres = power_matrix(bundle, kind, q)?;
    GradedMap::new(&pres.matrix, pres.source_module(), pres.target_module()).kernel_dim(k, engine, limits)
}

/// How a dimension was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "level", rename_all = "snake_case")]
pub enum Evidence {
    /// Exact elimination over ℚ.
    Exact,
    /// Two primes agree.
    TwoPrimes { primes: [u64; 2] },
    /// A single prime; an upper bound for the rational dimension.
    OnePrime { prime: u64 },
}

impl Evidence {
    /// Whether a classification rule may use the value.
    pub fn is_confirmed(&self) -> bool {
        !matches!(self, Evidence::OnePrime { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimCell {
    pub value: usize,
    pub evidence: Evidence,
}

/// How tensor-power dimensions of a rational bundle are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DimStrategy {
    Exact,
    /// Reduce modulo two fixed primes; agreement confirms the value.
    TwoPrimes,
}

/// `h^0(E^{⊗q})` for a rational bundle of slope 0.
pub fn tensor_dim_rational(
    bundle: &KernelBundle<Rationals>,
    q: usize,
    strategy: DimStrategy,
    engine: Engine,
    limits: &Limits,
) -> Result<DimCell> {
    match strategy {
        DimStrategy::Exact => Ok(DimCell {
            value: section_dim_power(bundle, PowerKind::Tensor, q, 0, engine, limits)?,
            evidence: Evidence::Exact,
        }),
        DimStrategy::TwoPrimes => {
            let mut vals = [0usize; 2];
            for (v, p) in vals.iter_mut().zip([PRIME_A, PRIME_B]) {
                let red = bundle.reduce_mod(PrimeField::new(p)?)?;
                *v = section_dim_power(&red, PowerKind::Tensor, q, 0, engine, limits)?;
            }
            if vals[0] == vals[1] {
                Ok(DimCell {
                    value: vals[0],
                    evidence: Evidence::TwoPrimes {
                        primes: [PRIME_A, PRIME_B],
                    },
                })
            } else {
                // each value bounds the rational one from above
                let (value, prime) = if vals[0] <= vals[1] {
                    (vals[0], PRIME_A)
                } else {
                    (vals[1], PRIME_B)
                };
                Ok(DimCell {
                    value,
                    evidence: Evidence::OnePrime { prime },
                })
            }
        }
    }
}

/// Whether `E ≅ E^*(t)` is indicated by `h^0((E ⊗ E)(-2μ)) >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfDuality {
    pub selfdual: bool,
    /// `h^0((E ⊗ E)(-2μ))` when it was computed.
    pub square_sections: Option<usize>,
    pub reason: String,
}

pub fn selfdual_detect<F: Field>(bundle: &KernelBundle<F>, engine: Engine, limits: &Limits) -> Result<SelfDuality> {
    let rank = bundle.rank();
    if rank == 2 {
        return Ok(SelfDuality {
            selfdual: true,
            square_sections: None,
            reason: "rank 2: E^* is E twisted by det E^-1".into(),
        });
    }
    let two_mu = crate::rational::q(2) * bundle.slope();
    let Some(neg_t) = as_integer(&two_mu) else {
        return Ok(SelfDuality {
            selfdual: false,
            square_sections: None,
            reason: "2*slope is not an integer".into(),
        });
    };
    if rank % 2 == 1 && bundle.is_syzygy_shape() && bundle.n_dim() == 2 {
        return Ok(SelfDuality {
            selfdual: false,
            square_sections: None,
            reason: "odd-rank syzygy bundle on P^2".into(),
        });
    }
    let h = section_dim_power(bundle, PowerKind::Tensor, 2, -neg_t, engine, limits)?;
    Ok(SelfDuality {
        selfdual: h >= 1,
        square_sections: Some(h),
        reason: format!("h0((E x E)({})) = {h}", -neg_t),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TannakaFingerprint {
    pub rank: i64,
    /// Twist applied to reach slope 0.
    pub normalizing_twist: i64,
    /// `q -> h^0(E^{⊗q})` of the normalized bundle.
    pub dims: BTreeMap<usize, DimCell>,
    /// `h^0(E ⊗ E)`; equals 1 for a simple self-dual bundle.
    pub simplicity: Option<usize>,
    pub selfdual: bool,
}

impl TannakaFingerprint {
    fn confirmed(&self, q: usize) -> Option<usize> {
        self.dims.get(&q).filter(|c| c.evidence.is_confirmed()).map(|c| c.value)
    }
}

/// Twist needed to bring `bundle` to slope 0.
pub fn normalizing_twist<F: Field>(bundle: &KernelBundle<F>) -> Result<i64> {
    as_integer(&-bundle.slope()).ok_or_else(|| {
        Error::Hypothesis(format!(
            "slope {} is not an integer, no twist reaches degree 0",
            crate::rational::to_text(&bundle.slope())
        ))
    })
}

/// Fingerprint of a rational bundle over powers `1..=max_q`. The `SL(r)`
/// rule only fires when `max_q >= r`.
pub fn fingerprint(
    bundle: &KernelBundle<Rationals>,
    max_q: usize,
    strategy: DimStrategy,
    engine: Engine,
    limits: &Limits,
) -> Result<TannakaFingerprint> {
    let c = normalizing_twist(bundle)?;
    let e = bundle.twist(c);
    let qs: Vec<usize> = (1..=max_q).collect();
    let cells = crate::par::try_map(limits.parallel, qs.clone(), |q| {
        tensor_dim_rational(&e, q, strategy, engine, limits)
    })?;
    let dims: BTreeMap<usize, DimCell> = qs.into_iter().zip(cells).collect();
    let sd = selfdual_detect(&e, engine, limits)?;
    Ok(TannakaFingerprint {
        rank: e.rank(),
        normalizing_twist: c,
        simplicity: dims.get(&2).map(|c| c.value),
        selfdual: sd.selfdual,
        dims,
    })
}

/// Fingerprint of a bundle over 𝔽ₚ; every cell is single-prime evidence.
pub fn fingerprint_mod_p(
    bundle: &KernelBundle<PrimeField>,
    max_q: usize,
    engine: Engine,
    limits: &Limits,
) -> Result<TannakaFingerprint> {
    let c = normalizing_twist(bundle)?;
    let e = bundle.twist(c);
    let p = e.ring().field().modulus();
    let qs: Vec<usize> = (1..=max_q).collect();
    let vals = crate::par::try_map(limits.parallel, qs.clone(), |q| {
        section_dim_power(&e, PowerKind::Tensor, q, 0, engine, limits)
    })?;
    let dims: BTreeMap<usize, DimCell> = qs
        .into_iter()
        .zip(vals)
        .map(|(q, value)| {
            (
                q,
                DimCell {
                    value,
                    evidence: Evidence::OnePrime { prime: p },
                },
            )
        })
        .collect();
    let sd = selfdual_detect(&e, engine, limits)?;
    Ok(TannakaFingerprint {
        rank: e.rank(),
        normalizing_twist: c,
        simplicity: dims.get(&2).map(|c| c.value),
        selfdual: sd.selfdual,
        dims,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "group", content = "r")]
pub enum Group {
    SL(i64),
    Sp(i64),
}

impl std::fmt::Display for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Group::SL(r) => write!(f, "SL({r})"),
            Group::Sp(r) => write!(f, "Sp({r})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupGuess {
    /// `None` when no rule of the table fired.
    pub group: Option<Group>,
    pub justification: String,
    pub fingerprint: TannakaFingerprint,
}

/// Applies the decision table. Refuses without proven stability.
pub fn classify_group(fp: &TannakaFingerprint, stability: StabilityStatus) -> Result<GroupGuess> {
    if !matches!(
        stability,
        StabilityStatus::ProvenStable | StabilityStatus::ProvenViaSelfDuality
    ) {
        return Err(Error::Hypothesis(format!(
            "classification needs proven stability, have {stability:?}"
        )));
    }
    let r = fp.rank;
    let d4 = fp.confirmed(4);
    let dr = fp.confirmed(r as usize);
    let (group, justification) = if r == 4 && fp.selfdual && d4 == Some(3) {
        (Some(Group::Sp(4)), "rank 4, self-dual, h0(E^4) = 3".to_string())
    } else if r == 6 && fp.selfdual && d4 == Some(3) {
        (Some(Group::Sp(6)), "rank 6, self-dual, h0(E^4) = 3".to_string())
    } else if dr == Some(1) {
        (Some(Group::SL(r)), format!("h0(E^{r}) = 1"))
    } else {
        let unconfirmed = fp.dims.values().any(|c| !c.evidence.is_confirmed());
        let note = if unconfirmed {
            "no rule fired; some dimensions are single-prime evidence"
        } else {
            "no rule fired"
        };
        (None, note.to_string())
    };
    Ok(GroupGuess {
        group,
        justification,
        fingerprint: fp.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Ring};
    use crate::bundle::SyzygyBundleSpec;

    fn syz(gens: &[&str], twist: i64) -> KernelBundle<Rationals> {
        let ring = Ring::projective(Rationals, 2);
        let g = gens.iter().map(|s| parse_polynomial(s, &ring).unwrap()).collect();
        SyzygyBundleSpec::new(g, twist).unwrap().to_bundle().unwrap()
    }

    #[test]
    fn sl3_fingerprint() {
        let e = syz(&["X^3", "Y^3", "Z^3", "X*Y*Z"], 4);
        let l = Limits::default();
        let fp = fingerprint(&e, 3, DimStrategy::Exact, Engine::Linalg, &l).unwrap();
        assert_eq!(fp.normalizing_twist, 0);
        assert_eq!(fp.dims[&1].value, 0);
        assert_eq!(fp.dims[&3].value, 1);
        assert!(!fp.selfdual);
        let g = classify_group(&fp, StabilityStatus::ProvenStable).unwrap();
        assert_eq!(g.group, Some(Group::SL(3)));
        assert!(classify_group(&fp, StabilityStatus::Undetermined).is_err());
    }

    #[test]
    fn koszul_rank_two_is_selfdual() {
        let e = syz(&["X", "Y", "Z"], 0);
        assert!(
            selfdual_detect(&e, Engine::Linalg, &Limits::default())
                .unwrap()
                .selfdual
        );
    }

    #[test]
    fn half_integral_slope_is_not_normalizable() {
        let e = syz(&["X", "Y", "Z"], 0);
        assert!(matches!(normalizing_twist(&e), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn quadrics_square_has_one_section() {
        let e = syz(&["X^2 - Y^2", "X^2 - Z^2", "X*Y", "X*Z", "Y*Z"], 0);
        let sd = selfdual_detect(&e, Engine::Both, &Limits::default()).unwrap();
        assert!(sd.selfdual);
        assert_eq!(sd.square_sections, Some(1));
    }

    #[test]
    fn two_prime_cells_agree_with_exact() {
        let e = syz(&["X^3", "Y^3", "Z^3", "X*Y*Z"], 4);
        let l = Limits::default();
        for q in 1..=2 {
            let a = tensor_dim_rational(&e, q, DimStrategy::Exact, Engine::Linalg, &l).unwrap();
            let b = tensor_dim_rational(&e, q, DimStrategy::TwoPrimes, Engine::Linalg, &l).unwrap();
            assert_eq!(a.value, b.value);
            assert!(b.evidence.is_confirmed());
        }
    }
}
