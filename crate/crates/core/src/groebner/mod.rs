//! Groebner bases for graded submodules of free modules, syzygies, ideal
//! powers and invariants of presented modules.

mod basis;
pub(crate) mod engine;
mod ideal;
mod module;
mod presented;
mod syzygy;

pub use basis::{buchberger, normal_form, GroebnerBasis};
pub use ideal::{ideal_power, interreduce, Ideal};
pub use module::{FreeModuleSpec, ModTerm, ModVector};
pub use presented::{krull_dim, length_of_quotient, PresentedModule};
pub use syzygy::{minimal_generators, syzygy_basis, syzygy_basis_with_degrees};

pub(crate) use module::cmp_terms;
