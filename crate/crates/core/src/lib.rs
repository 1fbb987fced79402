//! Semistability and stability of kernel bundles on projective space.
//!
//! A kernel bundle `E` is given by twist lists `a`, `b` and a homogeneous
//! matrix presenting `0 -> E -> ⊕ O(a_i) -> ⊕ O(b_j) -> 0`. Sections of
//! twists of `E` and of its tensor, exterior and symmetric powers are
//! computed exactly, either by Gröbner bases over graded free modules or by
//! degreewise linear algebra.

pub mod algebra;
pub mod bounds;
pub mod bundle;
pub mod engine;
pub mod error;
pub mod limits;
pub mod linalg;
pub mod modgb;
pub mod par;
pub mod powers;
pub mod rational;
pub mod stability;
pub mod tannaka;

pub use engine::Engine;
pub use error::{Error, Result};
pub use limits::Limits;
