//! Builds the objects of a job and dispatches the task.

use std::sync::Arc;
use std::time::{Duration, Instant};

use kbundle::algebra::{parse_polynomial, Field, FieldSpec, PolyMatrix, Polynomial, PrimeField, Rationals, Ring};
use kbundle::bounds::{
    closure_threshold, frobenius_membership, plane_curve_genus, restriction_bound, BoundInput, Certificate,
    ClosureAnswer, ClosureQuery, Known, Theorem,
};
use kbundle::bundle::{KernelBundle, SyzygyBundleSpec};
use kbundle::modgb::{ideal_groebner, ideal_membership};
use kbundle::rational::{from_text, q};
use kbundle::stability::{
    apply_criterion, bohnhorst_spindler, brenner_monomial, hoppe_check, parameter_criterion, pullback_transfer,
    selfdual_upgrade, StabilityReport, StabilityStatus, Verdict,
};
use kbundle::tannaka::{
    classify_group, fingerprint, fingerprint_mod_p, section_dim_power, DimStrategy, TannakaFingerprint,
};
use kbundle::{Engine, Error, Limits, Result};

use crate::job::{parse_range, Assumption, JobSpec, ObjectSpec, RingSpec, TaskKind, TaskSpec, Upgrade};
use crate::report::{
    Criteria, ErrorKind, ErrorReport, PullbackCheck, Report, SectionRow, TaskResult, Timing, SCHEMA_VERSION,
};

/// A finished task with its trace and exit code.
pub struct Outcome {
    pub result: TaskResult,
    pub trace: Vec<String>,
    pub exit_code: i32,
}

pub fn limits_for(task: &TaskSpec, parallel: bool) -> Limits {
    let mut l = Limits::default();
    if let Some(d) = task.max_degree {
        l.max_degree = d;
    }
    if let Some(p) = task.max_pairs {
        l.max_pairs = p;
    }
    if let Some(t) = task.timeout_seconds {
        l = l.with_timeout(Duration::from_secs(t));
    }
    l.parallel = parallel;
    l
}

/// Runs `command` on `job` and assembles the report. Never panics on bad
/// input; every failure becomes an error entry with its exit code.
pub fn run(command: TaskKind, job: JobSpec, parallel: bool) -> Report {
    let start = Instant::now();
    let outcome = execute(command, &job, parallel);
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (result, error, trace, exit_code) = match outcome {
        Ok(o) => (Some(o.result), None, o.trace, o.exit_code),
        Err(e) => {
            let (kind, code) = match &e {
                Error::Resource(_) => (ErrorKind::Resource, 2),
                Error::Internal(_) => (ErrorKind::Internal, 1),
                _ => (ErrorKind::Input, 1),
            };
            let err = ErrorReport {
                kind,
                message: e.to_string(),
            };
            (None, Some(err), Vec::new(), code)
        }
    };
    Report {
        schema: SCHEMA_VERSION,
        version: env!("CARGO_PKG_VERSION").to_string(),
        command,
        job,
        result,
        error,
        trace,
        exit_code,
        timing: Timing { elapsed_ms },
    }
}

pub fn execute(command: TaskKind, job: &JobSpec, parallel: bool) -> Result<Outcome> {
    if let Some(k) = job.task.kind {
        if k != command {
            return Err(Error::OutOfRange(format!(
                "job is a `{k}` task, invoked as `{command}`"
            )));
        }
    }
    let limits = limits_for(&job.task, parallel);
    let Some(ring) = &job.ring else {
        if command == TaskKind::Restrict && job.object.is_none() {
            return restrict::<Rationals>(&job.task, None, None);
        }
        return Err(Error::OutOfRange("the job has no [ring] block".into()));
    };
    match ring.field {
        FieldSpec::Rationals => Typed::new(Rationals, ring, job, limits)?.dispatch(command),
        FieldSpec::Prime(p) => Typed::new(PrimeField::new(p)?, ring, job, limits)?.dispatch(command),
    }
}

fn parse_in<F: Field>(ring: &Arc<Ring<F>>, what: &str, text: &str) -> Result<Polynomial<F>> {
    parse_polynomial(text, ring).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse {
            pos,
            msg: format!("{what} `{text}`: {msg}"),
        },
        other => Error::Parse {
            pos: 0,
            msg: format!("{what} `{text}`: {other}"),
        },
    })
}

fn parse_all<F: Field>(ring: &Arc<Ring<F>>, what: &str, texts: &[String]) -> Result<Vec<Polynomial<F>>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| parse_in(ring, &format!("{what} {}", i + 1), t))
        .collect()
}

/// Field-specific parts of the pipeline.
pub trait Backend: Field + Sized {
    /// The same polynomials over a prime field, if this is one.
    fn over_prime(ps: Vec<Polynomial<Self>>) -> Option<Vec<Polynomial<PrimeField>>>;

    fn fingerprint(
        b: &KernelBundle<Self>,
        max_q: usize,
        task: &TaskSpec,
        engine: Engine,
        limits: &Limits,
        trace: &mut Vec<String>,
    ) -> Result<TannakaFingerprint>;
}

impl Backend for Rationals {
    fn over_prime(_: Vec<Polynomial<Self>>) -> Option<Vec<Polynomial<PrimeField>>> {
        None
    }

    fn fingerprint(
        b: &KernelBundle<Self>,
        max_q: usize,
        task: &TaskSpec,
        engine: Engine,
        limits: &Limits,
        trace: &mut Vec<String>,
    ) -> Result<TannakaFingerprint> {
        let strategy = task.dims.unwrap_or(DimStrategy::Exact);
        if strategy == DimStrategy::TwoPrimes {
            trace.push("tensor dimensions reduced modulo two primes; agreement confirms a cell".into());
        }
        fingerprint(b, max_q, strategy, engine, limits)
    }
}

impl Backend for PrimeField {
    fn over_prime(ps: Vec<Polynomial<Self>>) -> Option<Vec<Polynomial<PrimeField>>> {
        Some(ps)
    }

    fn fingerprint(
        b: &KernelBundle<Self>,
        max_q: usize,
        _task: &TaskSpec,
        engine: Engine,
        limits: &Limits,
        trace: &mut Vec<String>,
    ) -> Result<TannakaFingerprint> {
        trace.push(format!(
            "dimensions over F_{} are single-prime evidence and do not confirm a group",
            b.ring().field().modulus()
        ));
        fingerprint_mod_p(b, max_q, engine, limits)
    }
}

struct Typed<'a, F: Backend> {
    ring: Arc<Ring<F>>,
    job: &'a JobSpec,
    task: &'a TaskSpec,
    engine: Engine,
    limits: Limits,
    trace: Vec<String>,
}

impl<'a, F: Backend> Typed<'a, F> {
    fn new(field: F, spec: &RingSpec, job: &'a JobSpec, limits: Limits) -> Result<Self> {
        Ok(Typed {
            ring: Ring::new(field, spec.variables.clone())?,
            job,
            task: &job.task,
            engine: job.task.engine.unwrap_or_default(),
            limits,
            trace: Vec::new(),
        })
    }

    /// Exit 0 when the question is decided, 2 when it stays open.
    fn done(self, result: TaskResult, decided: bool) -> Result<Outcome> {
        Ok(Outcome {
            result,
            trace: self.trace,
            exit_code: if decided { 0 } else { 2 },
        })
    }

    fn object(&self) -> Result<&'a ObjectSpec> {
        self.job
            .object
            .as_ref()
            .ok_or_else(|| Error::OutOfRange("the job has no [object] block".into()))
    }

    fn syzygy_spec(&self) -> Result<Option<SyzygyBundleSpec<F>>> {
        Ok(match self.object()? {
            ObjectSpec::Kernel { .. } => None,
            ObjectSpec::Syzygy { generators, twist } => Some(SyzygyBundleSpec::new(
                parse_all(&self.ring, "generator", generators)?,
                *twist,
            )?),
            ObjectSpec::Ideal { generators, .. } => Some(SyzygyBundleSpec::new(
                parse_all(&self.ring, "generator", generators)?,
                0,
            )?),
        })
    }

    fn unchecked_bundle(&self) -> Result<(KernelBundle<F>, Option<SyzygyBundleSpec<F>>)> {
        if let ObjectSpec::Kernel { a, b, matrix } = self.object()? {
            let rows = matrix
                .iter()
                .enumerate()
                .map(|(j, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(i, t)| parse_in(&self.ring, &format!("entry ({}, {})", j + 1, i + 1), t))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let m = PolyMatrix::from_rows(&self.ring, rows)?;
            return Ok((KernelBundle::new(&self.ring, a.clone(), b.clone(), m)?, None));
        }
        let spec = self.syzygy_spec()?.expect("not a kernel object");
        Ok((spec.to_bundle()?, Some(spec)))
    }

    fn bundle(&self) -> Result<(KernelBundle<F>, Option<SyzygyBundleSpec<F>>)> {
        let (b, s) = self.unchecked_bundle()?;
        b.validate(true, &self.limits)?;
        Ok((b, s))
    }

    fn dispatch(mut self, command: TaskKind) -> Result<Outcome> {
        match command {
            TaskKind::Check => self.check(),
            TaskKind::Sections => self.sections(),
            TaskKind::Tannaka => self.tannaka(),
            TaskKind::Restrict => {
                let bundle = match &self.job.object {
                    Some(ObjectSpec::Kernel { .. } | ObjectSpec::Syzygy { .. }) => Some(self.bundle()?.0),
                    _ => None,
                };
                let known = match (&bundle, self.task.known) {
                    (Some(b), None) => {
                        let r = self.decide(b, None)?;
                        self.trace.extend(r.trace.iter().cloned());
                        match (r.verdict, r.stability.is_proven_stable()) {
                            (Verdict::Unstable, _) => {
                                return Err(Error::Hypothesis(
                                    "the bundle is unstable; no restriction theorem applies".into(),
                                ))
                            }
                            (_, true) => Some(Known::Stable),
                            (_, false) => Some(Known::Semistable),
                        }
                    }
                    _ => None,
                };
                let n_dim = self.ring.n_dim() as i64;
                let out = restrict(self.task, bundle.as_ref().map(|b| (b, n_dim)), known)?;
                self.trace.extend(out.trace);
                self.done(out.result, true)
            }
            TaskKind::Closure => self.closure(),
            TaskKind::Validate => {
                let (b, _) = self.unchecked_bundle()?;
                let issues = b.issues(true, &self.limits)?;
                let valid = issues.is_empty();
                let res = TaskResult::Validate {
                    valid,
                    invariants: b.invariants(),
                    issues,
                };
                let mut out = self.done(res, true)?;
                if !valid {
                    out.exit_code = 1;
                }
                Ok(out)
            }
        }
    }

    /// Section test, numerical criteria and the requested upgrades.
    fn decide(&self, b: &KernelBundle<F>, spec: Option<&SyzygyBundleSpec<F>>) -> Result<StabilityReport> {
        let mode = self.task.mode.unwrap_or_default();
        let mut r = hoppe_check(b, self.engine, mode, &self.limits)?;
        r = apply_criterion(&r, "bohnhorst-spindler", bohnhorst_spindler(b))?;
        if let Some(s) = spec {
            if let Some(v) = brenner_verdict(s, &self.limits)? {
                r = apply_criterion(&r, "brenner", v)?;
            }
            if s.generators.len() == self.ring.n_dim() + 1 {
                r = apply_criterion(&r, "parameters", parameter_criterion(&s.degrees(), self.ring.n_dim())?)?;
            }
        }
        if self.task.upgrade.contains(&Upgrade::Selfdual) {
            r = selfdual_upgrade(b, &r, self.engine, &self.limits)?;
        }
        Ok(r)
    }

    fn check(mut self) -> Result<Outcome> {
        let (b, spec) = self.bundle()?;
        let report = self.decide(&b, spec.as_ref())?;
        let criteria = Criteria {
            brenner: match &spec {
                Some(s) if is_monomial_family(s) => Some(brenner_monomial(s, &self.limits)?),
                _ => None,
            },
            bohnhorst_spindler: bohnhorst_spindler(&b),
            parameters: match &spec {
                Some(s) if s.generators.len() == self.ring.n_dim() + 1 => {
                    Some(parameter_criterion(&s.degrees(), self.ring.n_dim())?)
                }
                _ => None,
            },
        };
        let mut report = report;
        let pullback = match self.task.pullback {
            Some(k) if k >= 2 => {
                let pb = b.pullback_powers(k)?;
                let pspec = match &spec {
                    Some(s) => Some(SyzygyBundleSpec::new(
                        s.generators
                            .iter()
                            .map(|g| g.substitute_powers(k))
                            .collect::<Result<_>>()?,
                        s.twist * k as i64,
                    )?),
                    None => None,
                };
                let pr = self.decide(&pb, pspec.as_ref())?;
                report = pullback_transfer(&report, &pr, k)?;
                Some(PullbackCheck { k, report: pr })
            }
            Some(k) => return Err(Error::OutOfRange(format!("pullback exponent must be >= 2, got {k}"))),
            None => None,
        };
        if report.verdict == Verdict::Semistable && report.stability == StabilityStatus::Undetermined {
            self.trace
                .push("semistable; stability is not decided by the available tests".into());
        }
        let res = TaskResult::Check {
            invariants: b.invariants(),
            report,
            criteria,
            pullback,
        };
        self.done(res, true)
    }

    fn sections(self) -> Result<Outcome> {
        let (b, _) = self.bundle()?;
        let kind = self.task.power.unwrap_or(kbundle::powers::PowerKind::Exterior);
        let qq = self.task.q.unwrap_or(1);
        let range = self
            .task
            .twists
            .as_deref()
            .ok_or_else(|| Error::OutOfRange("sections needs a twist range (--twists a..b)".into()))?;
        let (lo, hi) = parse_range(range)?;
        let mut table = Vec::new();
        for m in lo..=hi {
            let dim = section_dim_power(&b, kind, qq, m, self.engine, &self.limits)?;
            table.push(SectionRow { twist: m, dim });
        }
        self.done(TaskResult::Sections { kind, q: qq, table }, true)
    }

    fn tannaka(mut self) -> Result<Outcome> {
        let (b, spec) = self.bundle()?;
        let mut r = self.decide(&b, spec.as_ref())?;
        if !self.task.upgrade.contains(&Upgrade::Selfdual) {
            r = selfdual_upgrade(&b, &r, self.engine, &self.limits)?;
        }
        let max_q = self.task.max_q.unwrap_or(4);
        let fp = F::fingerprint(&b, max_q, self.task, self.engine, &self.limits, &mut self.trace)?;
        let guess = if r.stability.is_proven_stable() {
            Some(classify_group(&fp, r.stability)?)
        } else {
            self.trace
                .push(format!("no classification: stability is {:?}", r.stability));
            None
        };
        let all_confirmed = fp.dims.values().all(|c| c.evidence.is_confirmed());
        let decided = guess.as_ref().is_some_and(|g| g.group.is_some() || all_confirmed);
        let res = TaskResult::Tannaka {
            stability: r,
            fingerprint: fp,
            guess,
        };
        self.done(res, decided)
    }

    fn closure(mut self) -> Result<Outcome> {
        let ObjectSpec::Ideal {
            generators,
            element,
            curve,
        } = self.object()?
        else {
            return Err(Error::OutOfRange("closure needs an [object.ideal] block".into()));
        };
        let gens = parse_all(&self.ring, "generator", generators)?;
        let curve = curve.as_ref().map(|c| parse_in(&self.ring, "curve", c)).transpose()?;
        let element = element
            .as_ref()
            .map(|e| parse_in(&self.ring, "element", e))
            .transpose()?;
        let p = self.ring.field().characteristic();
        let certificate = if self.task.assume.contains(&Assumption::StronglySemistable) {
            self.trace
                .push("strong semistability of the syzygy bundle asserted by the user".into());
            Certificate::Asserted("strongly semistable (user assertion)".into())
        } else if p > 0 {
            return Err(Error::Hypothesis(
                "in positive characteristic pass --assume strongly-semistable to use the threshold".into(),
            ));
        } else {
            let spec = SyzygyBundleSpec::new(gens.clone(), 0)?;
            let b = spec.to_bundle()?;
            b.validate(true, &self.limits)?;
            let r = self.decide(&b, Some(&spec))?;
            if r.verdict != Verdict::Semistable {
                return Err(Error::Hypothesis("the syzygy bundle is not semistable".into()));
            }
            self.trace
                .push("certificate: section test finds the syzygy bundle on projective space semistable".into());
            Certificate::Checked("section test: semistable".into())
        };
        let genus = match (self.task.genus, &curve) {
            (Some(g), _) => Some(g),
            (None, Some(c)) => {
                let d = c
                    .homogeneous_degree()
                    .ok_or_else(|| Error::NonHomogeneous(c.to_string()))? as i64;
                self.trace.push(format!(
                    "genus {} from the smooth plane curve formula (d-1)(d-2)/2",
                    plane_curve_genus(d)
                ));
                Some(plane_curve_genus(d))
            }
            (None, None) => None,
        };
        let threshold = closure_threshold(&gens, Some(certificate.clone()), &self.limits)?;
        let Some(f) = element else {
            let res = TaskResult::Closure {
                threshold,
                genus,
                answer: None,
                in_closure: None,
            };
            return self.done(res, true);
        };
        if p > 0 {
            let mut polys = gens.clone();
            polys.push(f.clone());
            polys.extend(curve.iter().cloned());
            let mut polys = F::over_prime(polys).expect("positive characteristic");
            let curve = if curve.is_some() { polys.pop() } else { None };
            let element = polys.pop().expect("element");
            let query = ClosureQuery {
                generators: polys,
                element,
                curve,
                genus,
                certificate: Some(certificate),
            };
            let qpow = self.task.frobenius_q.unwrap_or(p);
            let rep = frobenius_membership(&query, qpow, &self.limits)?;
            let decided = rep.in_closure.is_some();
            let res = TaskResult::Closure {
                threshold: rep.threshold,
                genus: Some(rep.genus),
                answer: Some(rep.answer),
                in_closure: rep.in_closure,
            };
            return self.done(res, decided);
        }
        let mut base = gens.clone();
        base.extend(curve.iter().cloned());
        let m = f
            .homogeneous_degree()
            .ok_or_else(|| Error::NonHomogeneous(f.to_string()))? as i64;
        let (answer, in_closure) =
            if f.is_zero() || ideal_membership(&f, &ideal_groebner(&self.ring, &base, &self.limits)?)? {
                (Some(ClosureAnswer::InIdeal), Some(true))
            } else if q(m) >= threshold.tau {
                (Some(ClosureAnswer::AboveThreshold), Some(true))
            } else {
                self.trace
                    .push("below the threshold and outside the ideal: undecided in characteristic 0".into());
                (None, None)
            };
        let decided = in_closure.is_some();
        let res = TaskResult::Closure {
            threshold,
            genus,
            answer,
            in_closure,
        };
        self.done(res, decided)
    }
}

fn is_monomial_family<F: Field>(s: &SyzygyBundleSpec<F>) -> bool {
    s.generators.iter().all(|g| g.num_terms() == 1)
}

fn brenner_verdict<F: Field>(
    s: &SyzygyBundleSpec<F>,
    limits: &Limits,
) -> Result<Option<kbundle::stability::CriterionVerdict>> {
    if !is_monomial_family(s) {
        return Ok(None);
    }
    Ok(Some(brenner_monomial(s, limits)?.verdict))
}

fn restrict<F: Field>(
    task: &TaskSpec,
    bundle: Option<(&KernelBundle<F>, i64)>,
    known: Option<Known>,
) -> Result<Outcome> {
    let theorem = task
        .theorem
        .ok_or_else(|| Error::OutOfRange("restrict needs a theorem (--theorem flenner|langer|langer-strong)".into()))?;
    let inv = bundle.map(|(b, _)| b.invariants());
    let n_dim = task
        .n_dim
        .or(bundle.map(|(_, n)| n))
        .ok_or_else(|| Error::OutOfRange("restrict needs the dimension N (--n-dim)".into()))?;
    let rank = task
        .rank
        .or(inv.as_ref().map(|i| i.rank))
        .ok_or_else(|| Error::OutOfRange("restrict needs a rank (--rank)".into()))?;
    let discriminant = match (&task.discriminant, &inv) {
        (Some(d), _) => from_text(d).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("bad rational `{d}`"),
        })?,
        (None, Some(i)) => i.discriminant.clone(),
        (None, None) if theorem == Theorem::Flenner => q(0),
        (None, None) => {
            return Err(Error::OutOfRange(
                "restrict needs a discriminant (--discriminant)".into(),
            ))
        }
    };
    let characteristic = task
        .characteristic
        .or(bundle.map(|(b, _)| b.ring().field().characteristic()))
        .unwrap_or(0);
    let known = task.known.or(known).unwrap_or(Known::Semistable);
    let mut trace = Vec::new();
    if inv.is_some() {
        trace.push(format!(
            "rank and discriminant taken from the bundle; treated as {known:?}"
        ));
    }
    let bound = restriction_bound(
        theorem,
        BoundInput {
            n_dim,
            rank,
            discriminant,
            c: task.codim.unwrap_or(1),
            characteristic,
            known,
        },
    )?;
    Ok(Outcome {
        result: TaskResult::Restrict { bound },
        trace,
        exit_code: 0,
    })
}
