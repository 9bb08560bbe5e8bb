use super::fit::{FitResult, FitStatus};
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::groebner::{Ideal, PresentedModule};
use crate::homalg::{dim_total_homology, FreeComplex};

/// What a predicted degree refers to.
#[derive(Debug, Clone, Copy)]
pub enum Target<'a> {
    /// Any nonzero complex with finite-length homology: `dim M - 1`.
    MaxDim,
    /// A specific complex: `max{dim H^*(X ⊗ M), dim M - 1}`.
    Complex(&'a FreeComplex),
    /// Tor and Ext against `L`: `max{dim M ⊗ L, dim M - 1}`.
    Module(&'a PresentedModule),
}

/// The value of a degree formula together with the dimensions it used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prediction {
    pub predicted: i32,
    pub dim_m: i32,
    pub dim_h: Option<i32>,
    pub analytic_spread: Option<i32>,
}

/// `max{dim H^*(X ⊗ M), dim M - 1}` with no hypothesis gate; used as an upper bound.
pub fn homology_bound(x: &FreeComplex, m: &PresentedModule) -> Result<(i32, i32)> {
    let dim_h = dim_total_homology(x, m)?;
    Ok((dim_h.max(m.krull_dim() - 1), dim_h))
}

/// Applies the formula for `target`; refuses inputs outside its hypotheses.
pub fn predict_degree(target: Target<'_>, m: &PresentedModule, ideal: &[Polynomial]) -> Result<Prediction> {
    let dim_m = m.krull_dim();
    if !Ideal::new(m.ring(), ideal.to_vec())?.is_m_primary() {
        return Err(Error::HypothesisViolation("I is not m-primary".into()));
    }
    if dim_m <= 0 {
        return Err(Error::HypothesisViolation(format!("dim M = {dim_m} violates dim M > 0")));
    }
    let base = Prediction { predicted: dim_m - 1, dim_m, dim_h: None, analytic_spread: Some(dim_m) };
    Ok(match target {
        Target::MaxDim => base,
        Target::Complex(x) => {
            let (predicted, dim_h) = homology_bound(x, m)?;
            Prediction { predicted, dim_h: Some(dim_h), ..base }
        }
        Target::Module(l) => {
            let dim_ml = m.tensor(l)?.krull_dim();
            Prediction { predicted: dim_ml.max(dim_m - 1), dim_h: Some(dim_ml), ..base }
        }
    })
}

/// A fitted degree next to its prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeReport {
    pub fitted: FitResult,
    pub dim_m: i32,
    pub dim_h: Option<i32>,
    pub analytic_spread: Option<i32>,
    pub predicted: i32,
    pub verdict: bool,
}

impl DegreeReport {
    pub fn new(fitted: FitResult, p: Prediction) -> Self {
        let verdict = fitted.status == FitStatus::Stabilized && fitted.degree.map(|d| d as i32) == Some(p.predicted);
        DegreeReport {
            fitted,
            dim_m: p.dim_m,
            dim_h: p.dim_h,
            analytic_spread: p.analytic_spread,
            predicted: p.predicted,
            verdict,
        }
    }
}
