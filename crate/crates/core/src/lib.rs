//! Exact graded commutative algebra over prime fields.
//!
//! The crate computes length functions of the form
//! `n -> sum_i len H^i(X (x) M/I^n M)` for bounded complexes `X` of graded free
//! modules over `F_p[x_1..x_d]`, fits their polynomial degree, and exposes the
//! Groebner, resolution and linear-algebra machinery underneath.

pub mod algebra;
pub mod degfit;
pub mod error;
pub mod exec;
pub mod finlen;
pub mod groebner;
pub mod homalg;
pub mod linalg;

pub use error::{Error, Result};
