//! Bounded complexes of graded free modules and their homology.

mod chain;
mod complex;
mod map;
mod presented;
mod resolution;

pub use chain::{cone, mult_chain_map, ChainMap};
pub use complex::{direct_sum, hom_dual, koszul_complex, shift, taylor_complex, FreeComplex};
pub use map::GradedMap;
pub use presented::{
    dim_total_homology, homology, homology_dims, in_kbf, is_zero_object, presented_homology_lengths,
    tensor_complex_module, PresentedComplex,
};
pub use resolution::{free_resolution, minimize};
