use std::fmt;

use thiserror::Error;

/// Which resource guard tripped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResourceKind {
    Degree,
    Pairs,
    Time,
    /// A presentation too large to allocate.
    Size,
}

impl fmt::Display for ResourceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResourceKind::Degree => write!(f, "degree cap"),
            ResourceKind::Pairs => write!(f, "pair-count cap"),
            ResourceKind::Time => write!(f, "time limit"),
            ResourceKind::Size => write!(f, "size cap"),
        }
    }
}

/// A single rule violated by a kernel-bundle presentation.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum ValidationIssue {
    /// Entry (row, col) has the wrong degree for the twist lists.
    DegreeMismatch {
        row: usize,
        col: usize,
        expected: i64,
        found: u32,
    },
    /// Entry (row, col) is a nonzero constant.
    ConstantEntry { row: usize, col: usize },
    /// Entry (row, col) is not homogeneous.
    NonHomogeneousEntry { row: usize, col: usize },
    /// Matrix shape disagrees with the twist lists.
    Shape {
        rows: usize,
        cols: usize,
        n: usize,
        m: usize,
    },
    /// Need n > m >= 1.
    RankNotPositive { n: usize, m: usize },
    /// Need N >= 2.
    AmbientDimension { n_dim: usize },
    /// The maximal minors do not generate an R_+-primary ideal.
    NotSurjective,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::DegreeMismatch {
                row,
                col,
                expected,
                found,
            } => write!(
                f,
                "entry ({}, {}) has degree {found}, expected {expected}",
                row + 1,
                col + 1
            ),
            ValidationIssue::ConstantEntry { row, col } => {
                write!(f, "entry ({}, {}) is a nonzero constant", row + 1, col + 1)
            }
            ValidationIssue::NonHomogeneousEntry { row, col } => {
                write!(f, "entry ({}, {}) is not homogeneous", row + 1, col + 1)
            }
            ValidationIssue::Shape { rows, cols, n, m } => {
                write!(f, "matrix is {rows}x{cols} but the twist lists need {m}x{n}")
            }
            ValidationIssue::RankNotPositive { n, m } => {
                write!(f, "need n > m >= 1, got n = {n}, m = {m}")
            }
            ValidationIssue::AmbientDimension { n_dim } => {
                write!(f, "projective space must have dimension >= 2, got {n_dim}")
            }
            ValidationIssue::NotSurjective => {
                write!(f, "maximal minors are not R_+-primary; the map is not surjective")
            }
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("coefficient {0} is not representable in {1}")]
    Unrepresentable(String, String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("operands live in different rings")]
    RingMismatch,

    #[error("input is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("grading mismatch: {0}")]
    Grading(String),

    #[error("invalid bundle: {}", .0.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidBundle(Vec<ValidationIssue>),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("characteristic {char} divides {q}")]
    Characteristic { char: u64, q: usize },

    #[error("hypothesis not met: {0}")]
    Hypothesis(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("resource limit exceeded ({0})")]
    Resource(ResourceKind),
}

impl Error {
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
