//! Scalars, monomials and polynomials over a prime field.

mod field;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use field::{Field, DEFAULT_CHAR};
pub use monomial::{monomial_compare, monomials_of_degree, Monomial, MAX_VARS};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{Ring, RingSpec};

