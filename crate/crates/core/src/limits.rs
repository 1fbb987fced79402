use std::time::{Duration, Instant};

use crate::error::{Error, ResourceKind, Result};

/// Resource guards and execution policy shared by every engine.
///
/// A guard that trips aborts the computation with [`Error::Resource`];
/// no engine ever turns a tripped guard into an answer.
#[derive(Debug, Clone)]
pub struct Limits {
    /// Largest module degree any Gröbner computation or degree scan may touch.
    pub max_degree: i64,
    /// Largest number of S-pairs a single Buchberger run may process.
    pub max_pairs: usize,
    pub deadline: Option<Instant>,
    /// Run data-parallel loops on the rayon pool. Ignored without the
    /// `parallel` feature.
    pub parallel: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_degree: 200,
            max_pairs: 2_000_000,
            deadline: None,
            parallel: true,
        }
    }
}

impl Limits {
    pub fn sequential() -> Self {
        Limits {
            parallel: false,
            ..Limits::default()
        }
    }

    pub fn with_timeout(mut self, timeout: Duration) -> Self {
        self.deadline = Some(Instant::now() + timeout);
        self
    }

    pub fn check_time(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() >= d => Err(Error::Resource(ResourceKind::Time)),
            _ => Ok(()),
        }
    }

    pub fn check_degree(&self, degree: i64) -> Result<()> {
        if degree > self.max_degree {
            Err(Error::Resource(ResourceKind::Degree))
        } else {
            Ok(())
        }
    }
}
