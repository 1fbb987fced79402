//! The structured report and its plain-text rendering.

use std::fmt::Write as _;

use kbundle::bounds::{ClosureAnswer, ClosureThreshold, RestrictionBound};
use kbundle::bundle::Invariants;
use kbundle::error::ValidationIssue;
use kbundle::powers::PowerKind;
use kbundle::rational::to_text;
use kbundle::stability::{BrennerReport, CriterionVerdict, InitialDegree, StabilityReport};
use kbundle::tannaka::{GroupGuess, TannakaFingerprint};
use serde::{Deserialize, Serialize};

use crate::job::{JobSpec, TaskKind};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Criteria {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brenner: Option<BrennerReport>,
    pub bohnhorst_spindler: CriterionVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameters: Option<CriterionVerdict>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PullbackCheck {
    pub k: u32,
    pub report: StabilityReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionRow {
    pub twist: i64,
    pub dim: usize,
}

#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "snake_case")]
pub enum TaskResult {
    Check {
        invariants: Invariants,
        report: StabilityReport,
        criteria: Criteria,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        pullback: Option<PullbackCheck>,
    },
    Sections {
        kind: PowerKind,
        q: usize,
        table: Vec<SectionRow>,
    },
    Tannaka {
        stability: StabilityReport,
        fingerprint: TannakaFingerprint,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        guess: Option<GroupGuess>,
    },
    Restrict {
        bound: RestrictionBound,
    },
    Closure {
        threshold: ClosureThreshold,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        genus: Option<i64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        answer: Option<ClosureAnswer>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        in_closure: Option<bool>,
    },
    Validate {
        valid: bool,
        invariants: Invariants,
        issues: Vec<ValidationIssue>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorKind {
    Input,
    Internal,
    Resource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub version: String,
    pub command: TaskKind,
    pub job: JobSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<TaskResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    /// Assumptions, criteria and evidence levels behind the result.
    pub trace: Vec<String>,
    pub exit_code: i32,
    pub timing: Timing,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({:?}): {}", e.kind, e.message);
        }
        if let Some(r) = &self.result {
            render_result(&mut out, r);
        }
        for t in &self.trace {
            let _ = writeln!(out, "  note: {t}");
        }
        out
    }
}

fn alpha_text(a: &Option<InitialDegree>) -> String {
    match a {
        None => "-".into(),
        Some(InitialDegree::Exact(k)) => k.to_string(),
        Some(InitialDegree::Above(k)) => format!(">{k}"),
    }
}

fn render_stability(out: &mut String, r: &StabilityReport) {
    let _ = writeln!(out, "verdict: {:?}", r.verdict);
    let _ = writeln!(out, "stability: {:?}", r.stability);
    let _ = writeln!(out, "rank {}, slope {}", r.rank, to_text(&r.slope));
    for p in &r.per_power {
        let rel = serde_json::to_value(p.relation)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "  q = {}: alpha {} {} threshold {}",
            p.q,
            alpha_text(&p.alpha),
            rel,
            to_text(&p.threshold)
        );
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(
            out,
            "witness: q = {}, degree {}, verified {}",
            w.q, w.degree, w.verified
        );
    }
}

fn render_result(out: &mut String, r: &TaskResult) {
    match r {
        TaskResult::Check {
            report,
            criteria,
            pullback,
            ..
        } => {
            render_stability(out, report);
            if let Some(b) = &criteria.brenner {
                let _ = writeln!(out, "brenner: {:?}", b.verdict);
            }
            let _ = writeln!(out, "bohnhorst-spindler: {:?}", criteria.bohnhorst_spindler);
            if let Some(p) = &criteria.parameters {
                let _ = writeln!(out, "parameters: {p:?}");
            }
            if let Some(p) = pullback {
                let _ = writeln!(
                    out,
                    "pullback (k = {}): {:?} / {:?}",
                    p.k, p.report.verdict, p.report.stability
                );
            }
        }
        TaskResult::Sections { kind, q, table } => {
            let _ = writeln!(out, "h0 of the {kind} power q = {q}:");
            for row in table {
                let _ = writeln!(out, "  m = {:>4}: {}", row.twist, row.dim);
            }
        }
        TaskResult::Tannaka {
            stability,
            fingerprint,
            guess,
        } => {
            let _ = writeln!(out, "stability: {:?}", stability.stability);
            let _ = writeln!(out, "normalizing twist: {}", fingerprint.normalizing_twist);
            for (q, c) in &fingerprint.dims {
                let _ = writeln!(out, "  h0(E^{q}) = {} ({:?})", c.value, c.evidence);
            }
            let _ = writeln!(out, "self-dual: {}", fingerprint.selfdual);
            match guess.as_ref().and_then(|g| g.group.map(|x| (x, &g.justification))) {
                Some((g, why)) => {
                    let _ = writeln!(out, "group: {g} ({why})");
                }
                None => {
                    let _ = writeln!(out, "group: undetermined");
                }
            }
        }
        TaskResult::Restrict { bound } => {
            let _ = writeln!(out, "{:?}: k_min = {}", bound.theorem, bound.k_min);
            let _ = writeln!(out, "  {}", bound.conclusion);
        }
        TaskResult::Closure {
            threshold,
            answer,
            in_closure,
            ..
        } => {
            let _ = writeln!(
                out,
                "threshold {}: every form of degree >= {} lies in the closure",
                to_text(&threshold.tau),
                threshold.min_degree
            );
            if let Some(a) = answer {
                let _ = writeln!(out, "answer: {a:?}");
                let _ = writeln!(
                    out,
                    "in closure: {}",
                    in_closure.map_or("undecided".into(), |b| b.to_string())
                );
            }
        }
        TaskResult::Validate {
            valid,
            invariants,
            issues,
        } => {
            let _ = writeln!(out, "valid: {valid}");
            let _ = writeln!(
                out,
                "rank {}, c1 {}, c2 {}, discriminant {}",
                invariants.rank,
                invariants.c1,
                to_text(&invariants.c2),
                to_text(&invariants.discriminant)
            );
            for i in issues {
                let _ = writeln!(out, "  issue: {i}");
            }
        }
    }
}
