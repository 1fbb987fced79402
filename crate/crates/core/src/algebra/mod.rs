//! Exact fields, monomials, polynomials and the polynomial parser.

pub mod field;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::{Field, FieldSpec, PrimeField, Rationals, PRIME_A, PRIME_B};
pub use matrix::PolyMatrix;
pub use monomial::{count_monomials, monomials_of_degree, Monomial, MonomialBasis, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::{Polynomial, Ring};
