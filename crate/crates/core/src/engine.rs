//! Engine selection for graded kernel dimensions.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, PolyMatrix};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::modgb::{
    graded_piece_dim, initial_degree, kernel_basis_linalg, kernel_dim_linalg, syzygy_module, GradedFreeModule,
    ModuleElement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Syzygies and Hilbert functions from Gröbner bases.
    #[serde(rename = "gb")]
    Groebner,
    /// Degreewise exact elimination.
    #[default]
    Linalg,
    /// Both, with any disagreement treated as a fatal error.
    Both,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gb" | "groebner" => Ok(Engine::Groebner),
            "linalg" => Ok(Engine::Linalg),
            "both" => Ok(Engine::Both),
            _ => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown engine `{s}` (gb, linalg, both)"),
            }),
        }
    }
}

impl std::fmt::Display for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Engine::Groebner => "gb",
            Engine::Linalg => "linalg",
            Engine::Both => "both",
        })
    }
}

/// A graded map `source -> target` whose kernel is being probed.
pub struct GradedMap<'a, F: Field> {
    pub matrix: &'a PolyMatrix<F>,
    pub source: Arc<GradedFreeModule<F>>,
    pub target: Arc<GradedFreeModule<F>>,
}

impl<'a, F: Field> GradedMap<'a, F> {
    pub fn new(matrix: &'a PolyMatrix<F>, source: Arc<GradedFreeModule<F>>, target: Arc<GradedFreeModule<F>>) -> Self {
        GradedMap { matrix, source, target }
    }

    /// Smallest degree in which the source module is nonzero.
    pub fn source_floor(&self) -> i64 {
        self.source.degrees().iter().copied().min().unwrap_or(0)
    }

    /// `dim ker_t`.
    pub fn kernel_dim(&self, t: i64, engine: Engine, limits: &Limits) -> Result<usize> {
        match engine {
            Engine::Linalg => kernel_dim_linalg(self.matrix, &self.source, &self.target, t, limits),
            Engine::Groebner => {
                limits.check_degree(t)?;
                let syz = syzygy_module(self.matrix, &self.source, &self.target, Some(t), limits)?;
                let gb = syz.groebner_basis(t, limits)?;
                graded_piece_dim(&gb, t)
            }
            Engine::Both => {
                let a = self.kernel_dim(t, Engine::Groebner, limits)?;
                let b = self.kernel_dim(t, Engine::Linalg, limits)?;
                if a != b {
                    return Err(Error::Internal(format!(
                        "engines disagree in degree {t}: gb {a}, linalg {b}"
                    )));
                }
                Ok(a)
            }
        }
    }

    /// The smallest `t <= upper` with a nonzero kernel piece, together with
    /// a kernel element of that degree; `None` when the kernel vanishes
    /// through `upper`.
    pub fn first_kernel_degree(
        &self,
        upper: i64,
        engine: Engine,
        limits: &Limits,
    ) -> Result<Option<(i64, ModuleElement<F>)>> {
        match engine {
            Engine::Linalg => {
                for t in self.source_floor()..=upper {
                    limits.check_time()?;
                    let basis = kernel_basis_linalg(self.matrix, &self.source, &self.target, t, limits)?;
                    if let Some(e) = basis.into_iter().next() {
                        return Ok(Some((t, e)));
                    }
                }
                Ok(None)
            }
            Engine::Groebner => {
                if upper < self.source_floor() {
                    return Ok(None);
                }
                limits.check_degree(upper)?;
                let syz = syzygy_module(self.matrix, &self.source, &self.target, Some(upper), limits)?;
                Ok(match initial_degree(&syz) {
                    Some(d) if d <= upper => {
                        let pos = syz.degrees().iter().position(|&x| x == d).expect("present");
                        Some((d, syz.generators()[pos].clone()))
                    }
                    _ => None,
                })
            }
            Engine::Both => {
                let a = self.first_kernel_degree(upper, Engine::Groebner, limits)?;
                let b = self.first_kernel_degree(upper, Engine::Linalg, limits)?;
                let (da, db) = (a.as_ref().map(|x| x.0), b.as_ref().map(|x| x.0));
                if da != db {
                    return Err(Error::Internal(format!(
                        "engines disagree on the initial degree: gb {da:?}, linalg {db:?}"
                    )));
                }
                Ok(b)
            }
        }
    }
}
