//! Command-line flags and their overlay onto a job document.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use kbundle::algebra::FieldSpec;
use kbundle::bounds::{Known, Theorem};
use kbundle::powers::PowerKind;
use kbundle::stability::Mode;
use kbundle::tannaka::DimStrategy;
use kbundle::{Engine, Result};
use serde::de::DeserializeOwned;

use crate::job::{Assumption, JobSpec, ObjectSpec, RingSpec, TaskKind, Upgrade};

/// Parses a kebab- or snake-case name into a serde enum.
fn named<T: DeserializeOwned>(s: &str) -> std::result::Result<T, String> {
    serde_json::from_value(serde_json::Value::String(s.replace('-', "_"))).map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "kbundle",
    version,
    about = "Semistability, sections and closure bounds for kernel bundles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct Common {
    /// gb, linalg or both (both cross-checks and fails on disagreement).
    #[arg(long, global = true)]
    pub engine: Option<Engine>,
    /// Coefficient field: Q or fp:P.
    #[arg(long, global = true)]
    pub field: Option<FieldSpec>,
    /// Write the structured report to PATH (`-` for stdout).
    #[arg(long, global = true, value_name = "PATH")]
    pub json_out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub max_degree: Option<i64>,
    #[arg(long, global = true)]
    pub max_pairs: Option<usize>,
    #[arg(long, global = true)]
    pub timeout_seconds: Option<u64>,
    /// Run every loop on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    /// Ring variables, comma separated (default X,Y,Z).
    #[arg(long, global = true, value_delimiter = ',')]
    pub vars: Option<Vec<String>>,
    /// Syzygy bundle generators, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub syzygy: Option<Vec<String>>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub twist: Option<i64>,
    /// Ideal generators, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub ideal: Option<Vec<String>>,
    #[arg(long, global = true)]
    pub element: Option<String>,
    #[arg(long, global = true)]
    pub curve: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide semistability and, where possible, stability.
    Check(CheckArgs),
    /// Tabulate h^0 of a tensor, exterior or symmetric power.
    Sections(SectionsArgs),
    /// Tensor-power fingerprint and group classification.
    Tannaka(TannakaArgs),
    /// Effective restriction degrees.
    Restrict(RestrictArgs),
    /// Closure threshold and membership.
    Closure(ClosureArgs),
    /// Validate a presentation.
    Validate(JobArg),
}

#[derive(Debug, Args)]
pub struct JobArg {
    /// Job file (TOML).
    pub job: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub job: JobArg,
    /// semistability or stability-evidence.
    #[arg(long, value_parser = named::<Mode>)]
    pub mode: Option<Mode>,
    #[arg(long, value_parser = named::<Upgrade>)]
    pub upgrade: Vec<Upgrade>,
    /// Also check the pullback along X_i -> X_i^K.
    #[arg(long, value_name = "K")]
    pub pullback: Option<u32>,
}

#[derive(Debug, Args)]
pub struct SectionsArgs {
    #[command(flatten)]
    pub job: JobArg,
    #[arg(long)]
    pub kind: Option<PowerKind>,
    #[arg(long)]
    pub q: Option<usize>,
    /// Inclusive range a..b.
    #[arg(long, allow_hyphen_values = true)]
    pub twists: Option<String>,
}

#[derive(Debug, Args)]
pub struct TannakaArgs {
    #[command(flatten)]
    pub job: JobArg,
    #[arg(long)]
    pub max_q: Option<usize>,
    /// exact or two-primes.
    #[arg(long, value_parser = named::<DimStrategy>)]
    pub dims: Option<DimStrategy>,
    #[arg(long, value_parser = named::<Upgrade>)]
    pub upgrade: Vec<Upgrade>,
}

#[derive(Debug, Args)]
pub struct RestrictArgs {
    #[command(flatten)]
    pub job: JobArg,
    #[arg(long)]
    pub theorem: Option<Theorem>,
    #[arg(long)]
    pub n_dim: Option<i64>,
    #[arg(long)]
    pub rank: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    pub discriminant: Option<String>,
    /// Number of divisors cut (Flenner).
    #[arg(long)]
    pub codim: Option<i64>,
    #[arg(long)]
    pub characteristic: Option<u64>,
    #[arg(long, value_parser = named::<Known>)]
    pub known: Option<Known>,
}

#[derive(Debug, Args)]
pub struct ClosureArgs {
    #[command(flatten)]
    pub job: JobArg,
    #[arg(long)]
    pub frobenius_q: Option<u64>,
    #[arg(long)]
    pub genus: Option<i64>,
    #[arg(long, value_parser = named::<Assumption>)]
    pub assume: Vec<Assumption>,
}

impl Cli {
    pub fn task_kind(&self) -> TaskKind {
        match self.command {
            Command::Check(_) => TaskKind::Check,
            Command::Sections(_) => TaskKind::Sections,
            Command::Tannaka(_) => TaskKind::Tannaka,
            Command::Restrict(_) => TaskKind::Restrict,
            Command::Closure(_) => TaskKind::Closure,
            Command::Validate(_) => TaskKind::Validate,
        }
    }

    fn job_path(&self) -> Option<&PathBuf> {
        match &self.command {
            Command::Check(a) => a.job.job.as_ref(),
            Command::Sections(a) => a.job.job.as_ref(),
            Command::Tannaka(a) => a.job.job.as_ref(),
            Command::Restrict(a) => a.job.job.as_ref(),
            Command::Closure(a) => a.job.job.as_ref(),
            Command::Validate(a) => a.job.as_ref(),
        }
    }

    /// The job file (if any) with every flag laid over it.
    pub fn job(&self) -> Result<JobSpec> {
        let mut job = match self.job_path() {
            Some(p) => JobSpec::load(p)?,
            None => JobSpec {
                ring: None,
                object: None,
                task: Default::default(),
            },
        };
        let c = &self.common;
        let wants_ring = c.vars.is_some() || c.field.is_some() || c.syzygy.is_some() || c.ideal.is_some();
        if job.ring.is_none() && wants_ring {
            job.ring = Some(RingSpec {
                variables: ["X", "Y", "Z"].map(String::from).to_vec(),
                field: FieldSpec::Rationals,
            });
        }
        if let Some(r) = job.ring.as_mut() {
            if let Some(v) = &c.vars {
                r.variables = v.iter().map(|s| s.trim().to_string()).collect();
            }
            if let Some(f) = c.field {
                r.field = f;
            }
        }
        let trimmed = |v: &Vec<String>| v.iter().map(|s| s.trim().to_string()).collect::<Vec<_>>();
        if let Some(g) = &c.syzygy {
            job.object = Some(ObjectSpec::Syzygy {
                generators: trimmed(g),
                twist: 0,
            });
        }
        if let Some(g) = &c.ideal {
            job.object = Some(ObjectSpec::Ideal {
                generators: trimmed(g),
                element: None,
                curve: None,
            });
        }
        match job.object.as_mut() {
            Some(ObjectSpec::Syzygy { twist, .. }) => {
                if let Some(t) = c.twist {
                    *twist = t;
                }
            }
            Some(ObjectSpec::Ideal { element, curve, .. }) => {
                if c.element.is_some() {
                    element.clone_from(&c.element);
                }
                if c.curve.is_some() {
                    curve.clone_from(&c.curve);
                }
            }
            _ => {}
        }
        let t = &mut job.task;
        macro_rules! set {
            ($field:ident, $val:expr) => {
                if let Some(v) = $val {
                    t.$field = Some(v);
                }
            };
        }
        set!(engine, c.engine);
        set!(max_degree, c.max_degree);
        set!(max_pairs, c.max_pairs);
        set!(timeout_seconds, c.timeout_seconds);
        match &self.command {
            Command::Check(a) => {
                set!(mode, a.mode);
                set!(pullback, a.pullback);
                extend(&mut t.upgrade, &a.upgrade);
            }
            Command::Sections(a) => {
                set!(power, a.kind);
                set!(q, a.q);
                set!(twists, a.twists.clone());
            }
            Command::Tannaka(a) => {
                set!(max_q, a.max_q);
                set!(dims, a.dims);
                extend(&mut t.upgrade, &a.upgrade);
            }
            Command::Restrict(a) => {
                set!(theorem, a.theorem);
                set!(n_dim, a.n_dim);
                set!(rank, a.rank);
                set!(discriminant, a.discriminant.clone());
                set!(codim, a.codim);
                set!(characteristic, a.characteristic);
                set!(known, a.known);
            }
            Command::Closure(a) => {
                set!(frobenius_q, a.frobenius_q);
                set!(genus, a.genus);
                extend(&mut t.assume, &a.assume);
            }
            Command::Validate(_) => {}
        }
        Ok(job)
    }
}

fn extend<T: PartialEq + Copy>(into: &mut Vec<T>, from: &[T]) {
    for x in from {
        if !into.contains(x) {
            into.push(*x);
        }
    }
}
