//! Graded free modules, Gröbner bases, syzygies and graded-piece
//! dimensions by two independent engines.

pub mod buchberger;
pub mod hilbert;
pub mod ideal;
pub mod kernel;
pub mod module;
pub mod syzygy;

pub use buchberger::{buchberger, buchberger_truncated, GroebnerBasis};
pub use hilbert::{graded_piece_dim, standard_monomial_count};
pub use ideal::{ideal_groebner, ideal_groebner_truncated, ideal_membership, is_irrelevant_primary};
pub use kernel::{kernel_basis_linalg, kernel_dim_linalg};
pub use module::{GradedFreeModule, ModuleElement};
pub use syzygy::{annihilates, check_grading, initial_degree, syzygy_module, SyzygyGenerators};
