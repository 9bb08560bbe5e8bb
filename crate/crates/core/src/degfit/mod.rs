//! Sampling of length functions, degree detection by finite differences,
//! and the degree formulas they are checked against.

mod fit;
mod predict;
mod sample;

pub use fit::{eta_value, fit_degree, FitResult, FitStatus, Samples};
pub use predict::{homology_bound, predict_degree, DegreeReport, Prediction, Target};
pub use sample::{
    confirm_fit, fit_adaptive, psi_at, psi_fast, psi_presented, sample_e, sample_psi, sample_t, sample_with,
    t_balanced_at, FitConfig, SampleOptions,
};
