//! Job documents: a `[ring]`, one `[object.*]` block and a `[task]` block.

use std::path::Path;

use kbundle::algebra::FieldSpec;
use kbundle::bounds::{Known, Theorem};
use kbundle::powers::PowerKind;
use kbundle::stability::Mode;
use kbundle::tannaka::DimStrategy;
use kbundle::{Engine, Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskKind {
    Check,
    Sections,
    Tannaka,
    Restrict,
    Closure,
    Validate,
}

impl std::fmt::Display for TaskKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            TaskKind::Check => "check",
            TaskKind::Sections => "sections",
            TaskKind::Tannaka => "tannaka",
            TaskKind::Restrict => "restrict",
            TaskKind::Closure => "closure",
            TaskKind::Validate => "validate",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub variables: Vec<String>,
    #[serde(default = "default_field")]
    pub field: FieldSpec,
}

fn default_field() -> FieldSpec {
    FieldSpec::Rationals
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ObjectSpec {
    /// `0 -> E -> ⊕ O(a_i) -> ⊕ O(b_j)`; rows of `matrix` index the `b_j`.
    Kernel {
        a: Vec<i64>,
        b: Vec<i64>,
        matrix: Vec<Vec<String>>,
    },
    Syzygy {
        generators: Vec<String>,
        #[serde(default)]
        twist: i64,
    },
    Ideal {
        generators: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        element: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        curve: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Upgrade {
    Selfdual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Assumption {
    /// The syzygy bundle is strongly semistable (positive characteristic).
    StronglySemistable,
}

/// Task options. Every field is optional; command-line flags override.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<TaskKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub engine: Option<Engine>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<Mode>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub upgrade: Vec<Upgrade>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pullback: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power: Option<PowerKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    /// Inclusive range `a..b`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub twists: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_q: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<DimStrategy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem: Option<Theorem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_dim: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<i64>,
    /// Exact rational, e.g. `80` or `-3/2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub discriminant: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codim: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub known: Option<Known>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frobenius_q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assume: Vec<Assumption>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_pairs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timeout_seconds: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<RingSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub object: Option<ObjectSpec>,
    #[serde(default)]
    pub task: TaskSpec,
}

impl JobSpec {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Parse {
            pos: e.span().map_or(0, |s| s.start),
            msg: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Unsupported(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}

/// Parses an inclusive range `a..b` (either end may be negative).
pub fn parse_range(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("bad range `{s}` (expected `a..b`)"),
    };
    let (a, b) = s.trim().split_once("..").ok_or_else(bad)?;
    let a: i64 = a.trim().parse().map_err(|_| bad())?;
    let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_syzygy_job() {
        let job = JobSpec::parse(
            r#"
            [ring]
            variables = ["X", "Y", "Z"]

            [object.syzygy]
            generators = ["X^2 - Y^2", "X*Y"]
            twist = 2

            [task]
            engine = "gb"
            upgrade = ["selfdual"]
            "#,
        )
        .unwrap();
        assert_eq!(job.ring.unwrap().field, FieldSpec::Rationals);
        assert!(matches!(job.object, Some(ObjectSpec::Syzygy { twist: 2, .. })));
        assert_eq!(job.task.engine, Some(Engine::Groebner));
        assert_eq!(job.task.upgrade, vec![Upgrade::Selfdual]);
    }

    #[test]
    fn rejects_unknown_keys() {
        assert!(JobSpec::parse("[task]\nengnie = \"gb\"\n").is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("-6..-4").unwrap(), (-6, -4));
        assert_eq!(parse_range("0..=3").unwrap(), (0, 3));
        assert!(parse_range("3..1").is_err());
        assert!(parse_range("3").is_err());
    }
}
