//! Semistability and stability decisions for kernel bundles: the exterior
//! power section test, the slope gate, combinatorial criteria and the
//! self-duality upgrade.

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Monomial};
use crate::bundle::{KernelBundle, SyzygyBundleSpec};
use crate::engine::{Engine, GradedMap};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::modgb::{annihilates, is_irrelevant_primary, ModuleElement};
use crate::powers::exterior_power_matrix;
use crate::rational::{ceil_i64, floor_i64, q, serde_q, to_text, Q};
use crate::tannaka::selfdual_detect;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unstable,
    Semistable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityStatus {
    ProvenStable,
    ProvenViaSelfDuality,
    Undetermined,
    NotStable,
}

impl StabilityStatus {
    pub fn is_proven_stable(self) -> bool {
        matches!(
            self,
            StabilityStatus::ProvenStable | StabilityStatus::ProvenViaSelfDuality
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Scan below the threshold only.
    Semistability,
    /// Also test the threshold degree itself when it is an integer.
    #[default]
    StabilityEvidence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gate {
    PassStrict,
    Pass,
    Fail,
}

/// Initial degree of an exterior power as far as it was scanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "degree", rename_all = "snake_case")]
pub enum InitialDegree {
    Exact(i64),
    /// No sections in any degree `<=` the value.
    Above(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">")]
    Greater,
    /// `α >= threshold` without knowing which.
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerRecord {
    pub q: usize,
    /// `None` when the slope gate settles this power.
    pub alpha: Option<InitialDegree>,
    /// `-q μ`.
    #[serde(with = "serde_q")]
    pub threshold: Q,
    pub relation: Relation,
}

/// A nonzero section of `(Λ^q E)(degree)` with `degree < -q μ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub q: usize,
    pub degree: i64,
    /// Components in the source basis of the exterior presentation
    /// (subsets in colexicographic order).
    pub components: Vec<String>,
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityReport {
    pub verdict: Verdict,
    pub stability: StabilityStatus,
    pub rank: i64,
    #[serde(with = "serde_q")]
    pub slope: Q,
    pub gate: Gate,
    pub per_power: Vec<PowerRecord>,
    pub witness: Option<Witness>,
    pub trace: Vec<String>,
}

/// Compares the smallest source twist with the slope.
pub fn numeric_slope_gate<F: Field>(bundle: &KernelBundle<F>) -> Gate {
    let an = q(*bundle.a().last().expect("n > 0"));
    let mu = bundle.slope();
    if an > mu {
        Gate::PassStrict
    } else if an == mu {
        Gate::Pass
    } else {
        Gate::Fail
    }
}

fn relation(alpha: InitialDegree, threshold: &Q) -> Relation {
    match alpha {
        InitialDegree::Exact(k) => match q(k).cmp(threshold) {
            std::cmp::Ordering::Less => Relation::Less,
            std::cmp::Ordering::Equal => Relation::Equal,
            std::cmp::Ordering::Greater => Relation::Greater,
        },
        InitialDegree::Above(u) => {
            let next = q(u + 1);
            if &next > threshold {
                Relation::Greater
            } else {
                debug_assert!(&next == threshold);
                Relation::AtLeast
            }
        }
    }
}

struct PowerOutcome<F: Field> {
    record: PowerRecord,
    witness: Option<(i64, ModuleElement<F>)>,
}

fn examine_power<F: Field>(
    bundle: &KernelBundle<F>,
    qq: usize,
    engine: Engine,
    mode: Mode,
    limits: &Limits,
) -> Result<PowerOutcome<F>> {
    let threshold = -(q(qq as i64) * bundle.slope());
    let upper = match mode {
        Mode::Semistability => ceil_i64(&threshold) - 1,
        Mode::StabilityEvidence => floor_i64(&threshold),
    };
    let pres = exterior_power_matrix(bundle, qq)?;
    let map = GradedMap::new(&pres.matrix, pres.source_module(), pres.target_module());
    let found = map.first_kernel_degree(upper, engine, limits)?;
    let alpha = match &found {
        Some((k, _)) => InitialDegree::Exact(*k),
        None => InitialDegree::Above(upper),
    };
    let rel = relation(alpha, &threshold);
    let witness = match found {
        Some((k, e)) if rel == Relation::Less => {
            if !annihilates(&pres.matrix, &e)? || e.is_zero() || e.degree(&map.source)? != Some(k) {
                return Err(Error::Internal(format!("witness for q = {qq} failed verification")));
            }
            Some((k, e))
        }
        _ => None,
    };
    Ok(PowerOutcome {
        record: PowerRecord {
            q: qq,
            alpha: Some(alpha),
            threshold,
            relation: rel,
        },
        witness,
    })
}

/// The exterior-power section test.
///
/// Exterior powers `q = 1, 2, ...` are checked in ascending order and the
/// first violation ends the run. A strict slope gate settles `q = rank - 1`;
/// otherwise that power is computed too, so a failing gate yields either a
/// verified witness or a semistable verdict.
pub fn hoppe_check<F: Field>(
    bundle: &KernelBundle<F>,
    engine: Engine,
    mode: Mode,
    limits: &Limits,
) -> Result<StabilityReport> {
    let issues = bundle.issues(false, limits)?;
    if !issues.is_empty() {
        return Err(Error::InvalidBundle(issues));
    }
    let rank = bundle.rank();
    let mu = bundle.slope();
    let gate = numeric_slope_gate(bundle);
    let mut trace = vec![format!(
        "slope gate: a_n = {} vs slope {}: {gate:?}",
        bundle.a().last().expect("n > 0"),
        to_text(&mu)
    )];
    let mut report = StabilityReport {
        verdict: Verdict::Semistable,
        stability: StabilityStatus::ProvenStable,
        rank,
        slope: mu.clone(),
        gate,
        per_power: Vec::new(),
        witness: None,
        trace: Vec::new(),
    };
    if rank == 1 {
        trace.push("line bundle: stable".into());
        report.trace = trace;
        return Ok(report);
    }
    let top = if gate == Gate::PassStrict {
        (rank as usize - 2).max(1)
    } else {
        rank as usize - 1
    };
    match gate {
        Gate::PassStrict => trace.push(format!(
            "no destabilizing line-bundle quotient; q = {} needs no section scan",
            rank - 1
        )),
        Gate::Pass => trace.push(format!("gate holds with equality; q = {} scanned explicitly", rank - 1)),
        Gate::Fail => trace.push(format!(
            "gate fails; without knowing the dual resolution is minimal this is not yet a verdict, so q = {} is scanned for a witness",
            rank - 1
        )),
    }
    let qs: Vec<usize> = (1..=top).collect();
    // Sequential runs stop at the first violation; parallel runs evaluate
    // every q and keep the smallest violating one.
    let outcomes: Vec<Result<PowerOutcome<F>>> = if limits.parallel {
        crate::par::map(true, qs, |qq| examine_power(bundle, qq, engine, mode, limits))
    } else {
        let mut v = Vec::new();
        for qq in qs {
            let o = examine_power(bundle, qq, engine, mode, limits);
            let stop = matches!(&o, Ok(o) if o.witness.is_some()) || o.is_err();
            v.push(o);
            if stop {
                break;
            }
        }
        v
    };
    for o in outcomes {
        let o = o?;
        report.per_power.push(o.record);
        if let Some((k, e)) = o.witness {
            let qq = report.per_power.last().expect("pushed").q;
            trace.push(format!(
                "unstable: (Λ^{qq} E)({k}) has a section and {k} < {}",
                to_text(&report.per_power.last().expect("pushed").threshold)
            ));
            report.verdict = Verdict::Unstable;
            report.stability = StabilityStatus::NotStable;
            report.witness = Some(Witness {
                q: qq,
                degree: k,
                components: e.components().iter().map(|p| p.to_string()).collect(),
                verified: true,
            });
            report.trace = trace;
            return Ok(report);
        }
    }
    if gate == Gate::PassStrict && rank > 2 {
        report.per_power.push(PowerRecord {
            q: rank as usize - 1,
            alpha: None,
            threshold: -(q(rank - 1) * &mu),
            relation: Relation::Greater,
        });
    }
    let all_strict = report.per_power.iter().all(|r| r.relation == Relation::Greater);
    report.stability = if all_strict {
        StabilityStatus::ProvenStable
    } else if rank == 2 && report.per_power[0].relation == Relation::Equal {
        trace.push("rank 2: a section at the threshold gives a line subbundle of equal slope".into());
        StabilityStatus::NotStable
    } else {
        trace.push("equality at the threshold: stability undetermined".into());
        StabilityStatus::Undetermined
    };
    report.trace = trace;
    Ok(report)
}

/// Verdicts of the sufficient numerical criteria.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionVerdict {
    Stable,
    Semistable,
    Unstable,
    Inconclusive,
    NotApplicable,
}

/// A subset `J` with its ratio `(d_J - Σ_J d_i) / (|J| - 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetRatio {
    /// One-based generator indices.
    pub subset: Vec<usize>,
    #[serde(with = "serde_q")]
    pub ratio: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrennerReport {
    pub verdict: CriterionVerdict,
    /// `-Σ d_i / (n - 1)`.
    #[serde(with = "serde_q")]
    pub bound: Q,
    /// The proper subset with the largest ratio.
    pub worst: Option<SubsetRatio>,
}

pub const SUBSET_CAP: usize = 25;

/// Subset criterion for monomial families. Strictness is only demanded of
/// proper subsets, since `J = I` always gives equality.
pub fn brenner_monomial<F: Field>(spec: &SyzygyBundleSpec<F>, limits: &Limits) -> Result<BrennerReport> {
    let n = spec.generators.len();
    if n > SUBSET_CAP {
        return Err(Error::OutOfRange(format!(
            "{n} generators exceed the subset cap {SUBSET_CAP}"
        )));
    }
    if n < 2 {
        return Err(Error::OutOfRange("need at least two generators".into()));
    }
    let monos: Vec<Monomial> = spec
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            match g.terms() {
                [(m, _)] => Some(m.clone()),
                _ => None,
            }
            .ok_or_else(|| Error::Hypothesis(format!("generator {} (`{g}`) is not a monomial", i + 1)))
        })
        .collect::<Result<_>>()?;
    if !is_irrelevant_primary(spec.ring(), &spec.generators, limits)? {
        return Err(Error::Hypothesis(
            "the monomials do not generate an R_+-primary ideal".into(),
        ));
    }
    let d: Vec<i64> = monos.iter().map(|m| m.degree() as i64).collect();
    let bound = Q::new((-d.iter().sum::<i64>()).into(), (n as i64 - 1).into());
    let mut worst: Option<SubsetRatio> = None;
    let mut any_equal = false;
    // depth-first over subsets with a running gcd
    let mut stack: Vec<(usize, Vec<usize>, Monomial, i64)> =
        (0..n).map(|i| (i + 1, vec![i], monos[i].clone(), d[i])).collect();
    stack.reverse();
    while let Some((next, subset, g, sum)) = stack.pop() {
        if subset.len() >= 2 && subset.len() < n {
            let ratio = Q::new((g.degree() as i64 - sum).into(), (subset.len() as i64 - 1).into());
            if ratio == bound {
                any_equal = true;
            }
            let better = match &worst {
                None => true,
                Some(w) => ratio > w.ratio,
            };
            if better {
                worst = Some(SubsetRatio {
                    subset: subset.iter().map(|i| i + 1).collect(),
                    ratio,
                });
            }
        }
        for j in (next..n).rev() {
            let mut s = subset.clone();
            s.push(j);
            stack.push((j + 1, s, g.gcd(&monos[j]), sum + d[j]));
        }
    }
    let verdict = match &worst {
        Some(w) if w.ratio > bound => CriterionVerdict::Inconclusive,
        _ if any_equal => CriterionVerdict::Semistable,
        _ => CriterionVerdict::Stable,
    };
    Ok(BrennerReport { verdict, bound, worst })
}

/// Rank-`N` kernel bundles on `P^N` whose dual resolution is minimal
/// (`b_j > a_j`), in characteristic 0: decided by `a_{N+k}` against `μ`.
pub fn bohnhorst_spindler<F: Field>(bundle: &KernelBundle<F>) -> CriterionVerdict {
    if bundle.ring().field().characteristic() != 0 || bundle.rank() != bundle.n_dim() as i64 || bundle.rank() < 2 {
        return CriterionVerdict::NotApplicable;
    }
    if bundle.b().iter().zip(bundle.a()).any(|(b, a)| b <= a) {
        return CriterionVerdict::NotApplicable;
    }
    match numeric_slope_gate(bundle) {
        Gate::PassStrict => CriterionVerdict::Stable,
        Gate::Pass => CriterionVerdict::Semistable,
        Gate::Fail => CriterionVerdict::Unstable,
    }
}

/// `N + 1` parameters of degrees `d_1 <= ... <= d_{N+1}`:
/// semistable when `d_1 + ... + d_N >= (N - 1) d_{N+1}`, stable when strict.
pub fn parameter_criterion(degrees: &[i64], n_dim: usize) -> Result<CriterionVerdict> {
    if degrees.len() != n_dim + 1 {
        return Err(Error::OutOfRange(format!(
            "need {} degrees on P^{n_dim}, got {}",
            n_dim + 1,
            degrees.len()
        )));
    }
    let mut d = degrees.to_vec();
    d.sort_unstable();
    if d[0] < 1 {
        return Err(Error::OutOfRange("parameter degrees must be positive".into()));
    }
    let lhs: i64 = d[..n_dim].iter().sum();
    let rhs = (n_dim as i64 - 1) * d[n_dim];
    Ok(match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => CriterionVerdict::Stable,
        std::cmp::Ordering::Equal => CriterionVerdict::Semistable,
        std::cmp::Ordering::Less => CriterionVerdict::Inconclusive,
    })
}

/// Folds a sufficient numerical criterion into a section-test report.
/// A contradiction between the two is an internal error; a strict
/// criterion settles an undetermined stability status.
pub fn apply_criterion(report: &StabilityReport, name: &str, verdict: CriterionVerdict) -> Result<StabilityReport> {
    let contradiction = match verdict {
        CriterionVerdict::Stable => {
            report.verdict == Verdict::Unstable || report.stability == StabilityStatus::NotStable
        }
        CriterionVerdict::Semistable => report.verdict == Verdict::Unstable,
        CriterionVerdict::Unstable => report.verdict == Verdict::Semistable,
        CriterionVerdict::Inconclusive | CriterionVerdict::NotApplicable => false,
    };
    if contradiction {
        return Err(Error::Internal(format!(
            "{name} says {verdict:?} but the section test says {:?}/{:?}",
            report.verdict, report.stability
        )));
    }
    let mut out = report.clone();
    match verdict {
        CriterionVerdict::Inconclusive | CriterionVerdict::NotApplicable => {}
        v => out.trace.push(format!("{name}: {v:?}")),
    }
    if verdict == CriterionVerdict::Stable && report.stability == StabilityStatus::Undetermined {
        out.stability = StabilityStatus::ProvenStable;
        out.trace.push(format!("stable by {name}"));
    }
    Ok(out)
}

/// Upgrades an undetermined semistable report of rank 4 or 6 to stable when
/// the bundle is self-dual and simple and every threshold equality sits at
/// `q ∈ {2, rank - 2}`.
pub fn selfdual_upgrade<F: Field>(
    bundle: &KernelBundle<F>,
    report: &StabilityReport,
    engine: Engine,
    limits: &Limits,
) -> Result<StabilityReport> {
    let mut out = report.clone();
    if report.verdict != Verdict::Semistable || report.stability != StabilityStatus::Undetermined {
        out.trace.push("self-duality upgrade: nothing to upgrade".into());
        return Ok(out);
    }
    let r = bundle.rank();
    if r != 4 && r != 6 {
        out.trace.push(format!(
            "self-duality upgrade: only ranks 4 and 6 are supported, rank is {r}"
        ));
        return Ok(out);
    }
    let allowed = [2, r as usize - 2];
    if let Some(bad) = report
        .per_power
        .iter()
        .find(|p| matches!(p.relation, Relation::Equal | Relation::AtLeast) && !allowed.contains(&p.q))
    {
        out.trace.push(format!(
            "self-duality upgrade: threshold equality at q = {} is not covered",
            bad.q
        ));
        return Ok(out);
    }
    let sd = selfdual_detect(bundle, engine, limits)?;
    out.trace.push(format!("self-duality evidence: {}", sd.reason));
    match sd.square_sections {
        Some(1) => {
            out.stability = StabilityStatus::ProvenViaSelfDuality;
            out.trace
                .push("self-dual and simple: a rank-2 destabilizer would give a non-scalar endomorphism".into());
        }
        _ => out.trace.push("self-duality upgrade: not self-dual and simple".into()),
    }
    Ok(out)
}

/// Transfers (semi)stability from the pullback along `X_i -> X_i^k`: a
/// destabilizing subsheaf of the base pulls back to one of the pullback.
pub fn pullback_transfer(base: &StabilityReport, pullback: &StabilityReport, k: u32) -> Result<StabilityReport> {
    let mut out = base.clone();
    if pullback.verdict == Verdict::Semistable {
        if base.verdict == Verdict::Unstable {
            return Err(Error::Internal(
                "base is unstable but its pullback is semistable".into(),
            ));
        }
        if pullback.stability.is_proven_stable() && !base.stability.is_proven_stable() {
            out.stability = StabilityStatus::ProvenStable;
            out.trace
                .push(format!("stable because its pullback along X_i -> X_i^{k} is stable"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, PolyMatrix, Rationals, Ring};

    fn syz(gens: &[&str], twist: i64) -> SyzygyBundleSpec<Rationals> {
        let ring = Ring::projective(Rationals, 2);
        let g = gens.iter().map(|s| parse_polynomial(s, &ring).unwrap()).collect();
        SyzygyBundleSpec::new(g, twist).unwrap()
    }

    #[test]
    fn gate_examples() {
        let b = syz(&["X^2 - Y^2", "X^2 - Z^2", "X*Y", "X*Z", "Y*Z"], 0)
            .to_bundle()
            .unwrap();
        assert_eq!(numeric_slope_gate(&b), Gate::PassStrict);
        let k = syz(&["X", "Y", "Z"], 0).to_bundle().unwrap();
        assert_eq!(numeric_slope_gate(&k), Gate::PassStrict);
        let u = syz(&["X^3", "Y^3", "Z^3", "X*Y^2*Z^2"], 0).to_bundle().unwrap();
        assert_eq!(numeric_slope_gate(&u), Gate::Fail);
    }

    #[test]
    fn koszul_is_stable_both_engines() {
        let k = syz(&["X", "Y", "Z"], 0).to_bundle().unwrap();
        for e in [Engine::Linalg, Engine::Groebner, Engine::Both] {
            let r = hoppe_check(&k, e, Mode::StabilityEvidence, &Limits::default()).unwrap();
            assert_eq!(r.verdict, Verdict::Semistable);
            assert_eq!(r.stability, StabilityStatus::ProvenStable);
            assert_eq!(r.per_power[0].alpha, Some(InitialDegree::Above(1)));
        }
    }

    #[test]
    fn criteria_fold_into_reports() {
        let u = syz(&["X^3", "Y^3", "Z^3", "X*Y^2*Z^2"], 0).to_bundle().unwrap();
        let r = hoppe_check(&u, Engine::Linalg, Mode::Semistability, &Limits::default()).unwrap();
        assert!(apply_criterion(&r, "brenner", CriterionVerdict::Stable).is_err());
        assert_eq!(
            apply_criterion(&r, "brenner", CriterionVerdict::Inconclusive).unwrap(),
            r
        );
        let mut s = r.clone();
        s.verdict = Verdict::Semistable;
        s.stability = StabilityStatus::Undetermined;
        let up = apply_criterion(&s, "parameters", CriterionVerdict::Stable).unwrap();
        assert_eq!(up.stability, StabilityStatus::ProvenStable);
    }

    #[test]
    fn unstable_witness() {
        let u = syz(&["X^3", "Y^3", "Z^3", "X*Y^2*Z^2"], 0).to_bundle().unwrap();
        let r = hoppe_check(&u, Engine::Linalg, Mode::Semistability, &Limits::sequential()).unwrap();
        assert_eq!(r.verdict, Verdict::Unstable);
        let w = r.witness.unwrap();
        assert_eq!((w.q, w.degree), (2, 9));
    }

    #[test]
    fn twisting_shifts_initial_degrees() {
        let k = syz(&["X", "Y", "Z"], 0).to_bundle().unwrap();
        let r = hoppe_check(&k.twist(3), Engine::Linalg, Mode::StabilityEvidence, &Limits::default()).unwrap();
        assert_eq!(r.stability, StabilityStatus::ProvenStable);
        assert_eq!(r.per_power[0].alpha, Some(InitialDegree::Above(-2)));
        assert_eq!(r.per_power[0].threshold, crate::rational::frac(-3, 2));
    }

    #[test]
    fn brenner_examples() {
        let l = Limits::default();
        let s = brenner_monomial(&syz(&["X^3", "Y^3", "Z^3", "X*Y*Z"], 4), &l).unwrap();
        assert_eq!(s.verdict, CriterionVerdict::Stable);
        let i = brenner_monomial(&syz(&["X^3", "Y^3", "Z^3", "X*Y^2*Z^2"], 0), &l).unwrap();
        assert_eq!(i.verdict, CriterionVerdict::Inconclusive);
        let w = i.worst.unwrap();
        assert_eq!(w.subset, vec![1, 2, 3]);
        assert_eq!(w.ratio, crate::rational::frac(-9, 2));
        assert_eq!(i.bound, crate::rational::frac(-14, 3));
        assert_eq!(
            brenner_monomial(&syz(&["X", "Y", "Z"], 0), &l).unwrap().verdict,
            CriterionVerdict::Stable
        );
        assert!(matches!(
            brenner_monomial(&syz(&["X^2 - Y^2", "Y^2", "Z^2"], 0), &l),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            brenner_monomial(&syz(&["X^2", "Y^2", "X*Y"], 0), &l),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn bohnhorst_spindler_examples() {
        let b = syz(&["X^2", "Y^2", "Z^2"], 3).to_bundle().unwrap();
        assert_eq!(bohnhorst_spindler(&b), CriterionVerdict::Stable);
        let ring = Ring::projective(Rationals, 2);
        let m = PolyMatrix::parse(&ring, &[vec!["0".into(), "0".into(), "0".into()]]).unwrap();
        let flat = KernelBundle::new(&ring, vec![1, 1, 1], vec![1], m).unwrap();
        assert_eq!(bohnhorst_spindler(&flat), CriterionVerdict::NotApplicable);
        let c = syz(&["X^3", "Y^3", "Z^3"], 3).to_bundle().unwrap();
        assert_eq!(c.slope(), crate::rational::frac(-3, 2));
        assert_eq!(bohnhorst_spindler(&c), CriterionVerdict::Stable);
    }

    #[test]
    fn parameter_examples() {
        assert_eq!(parameter_criterion(&[1, 1, 1], 2).unwrap(), CriterionVerdict::Stable);
        assert_eq!(parameter_criterion(&[2, 2, 2], 2).unwrap(), CriterionVerdict::Stable);
        assert_eq!(
            parameter_criterion(&[1, 1, 1, 3], 3).unwrap(),
            CriterionVerdict::Inconclusive
        );
        assert_eq!(
            parameter_criterion(&[1, 1, 2], 2).unwrap(),
            CriterionVerdict::Semistable
        );
        assert!(parameter_criterion(&[1, 1], 2).is_err());
    }
}
