use std::time::Instant;

use super::fit::{fit_degree, FitResult, FitStatus, Samples};
use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::finlen::{complex_homology_lengths_with, FiniteQuotient};
use crate::groebner::{ideal_power, PresentedModule};
use crate::homalg::{free_resolution, hom_dual, presented_homology_lengths, FreeComplex};

/// Execution strategy and an optional wall-clock deadline for sampling.
#[derive(Debug, Clone, Copy, Default)]
pub struct SampleOptions {
    pub exec: Execution,
    pub deadline: Option<Instant>,
}

impl SampleOptions {
    pub fn sequential() -> Self {
        SampleOptions { exec: Execution::Sequential, deadline: None }
    }

    fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::TimedOut),
            _ => Ok(()),
        }
    }
}

fn total(entries: &[(i32, u64)]) -> u64 {
    entries.iter().map(|e| e.1).sum()
}

/// `ψ(n) = Σ_i ℓ(H^i(X ⊗ M/I^n M))` by expanding `M/I^n M` over `k`.
pub fn psi_fast(x: &FreeComplex, m: &PresentedModule, ideal: &[Polynomial], n: u32, exec: Execution) -> Result<u64> {
    let q = FiniteQuotient::new(m, ideal, n)?;
    Ok(complex_homology_lengths_with(x, &q, exec)?.total())
}

/// `ψ(n)` through presented homology of `X ⊗ M/I^n M`.
pub fn psi_presented(x: &FreeComplex, m: &PresentedModule, ideal: &[Polynomial], n: u32) -> Result<u64> {
    let quotient = m.quotient_by_ideal(&ideal_power(ideal, n))?;
    Ok(total(&presented_homology_lengths(x, &quotient)?))
}

/// `ψ(n)`: the expansion when `M/I^n M` has finite length, presented homology otherwise.
pub fn psi_at(x: &FreeComplex, m: &PresentedModule, ideal: &[Polynomial], n: u32, exec: Execution) -> Result<u64> {
    match psi_fast(x, m, ideal, n, exec) {
        Err(Error::NotFiniteLength(_)) => psi_presented(x, m, ideal, n),
        other => other,
    }
}

/// Evaluates `f` at every `n` in `ns`, honouring the deadline.
pub fn sample_with<F>(ns: &[u32], opts: SampleOptions, f: F) -> Result<Vec<u64>>
where
    F: Fn(u32) -> Result<u64> + Sync + Send,
{
    opts.check()?;
    opts.exec
        .map(ns.to_vec(), |n| {
            opts.check()?;
            f(n)
        })
        .into_iter()
        .collect()
}

fn consecutive(ns: &[u32]) -> Result<u32> {
    match ns.first() {
        Some(&n0) if ns.iter().enumerate().all(|(k, &n)| n == n0 + k as u32) && n0 >= 1 => Ok(n0),
        _ => Err(Error::HypothesisViolation("samples need consecutive n starting at 1 or later".into())),
    }
}

pub fn sample_psi(
    x: &FreeComplex,
    m: &PresentedModule,
    ideal: &[Polynomial],
    ns: &[u32],
    opts: SampleOptions,
) -> Result<Samples> {
    let n_min = consecutive(ns)?;
    let values = sample_with(ns, opts, |n| psi_at(x, m, ideal, n, opts.exec))?;
    Ok(Samples::new(n_min, values))
}

/// Resolution length cap: a regular ring of dimension `d` needs at most `d` steps.
fn resolve(l: &PresentedModule) -> Result<FreeComplex> {
    free_resolution(l, l.ring().nvars())
}

/// `t(n) = Σ_i ℓ(Tor_i(L, M/I^n M))`.
pub fn sample_t(
    l: &PresentedModule,
    m: &PresentedModule,
    ideal: &[Polynomial],
    ns: &[u32],
    opts: SampleOptions,
) -> Result<Samples> {
    sample_psi(&resolve(l)?, m, ideal, ns, opts)
}

/// `e(n) = Σ_i ℓ(Ext^i(L, M/I^n M))`, as homology of the dual resolution.
pub fn sample_e(
    l: &PresentedModule,
    m: &PresentedModule,
    ideal: &[Polynomial],
    ns: &[u32],
    opts: SampleOptions,
) -> Result<Samples> {
    sample_psi(&hom_dual(&resolve(l)?), m, ideal, ns, opts)
}

/// `t(n)` with the roles swapped: a resolution of `M/I^n M` tensored with a
/// finite-length `L`. Tor is balanced, so this agrees with [`sample_t`] and
/// stays finite-dimensional even when `M/I^n M` is not.
pub fn t_balanced_at(l: &FiniteQuotient, m: &PresentedModule, ideal: &[Polynomial], n: u32, exec: Execution) -> Result<u64> {
    let quotient = m.quotient_by_ideal(&ideal_power(ideal, n))?;
    Ok(complex_homology_lengths_with(&resolve(&quotient)?, l, exec)?.total())
}

/// Sampling schedule for [`fit_adaptive`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitConfig {
    pub n_max: u32,
    pub cap: u32,
    pub window: usize,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig { n_max: 8, cap: 64, window: 4 }
    }
}

/// Samples `n = 1..n_max`, doubling `n_max` up to the cap until the fit locks.
pub fn fit_adaptive<F>(cfg: &FitConfig, mut eval: F) -> Result<(Samples, FitResult)>
where
    F: FnMut(&[u32]) -> Result<Vec<u64>>,
{
    let mut hi = cfg.n_max.min(cfg.cap).max(1);
    let first: Vec<u32> = (1..=hi).collect();
    let mut samples = Samples::new(1, eval(&first)?);
    loop {
        let fit = if samples.len() > cfg.window {
            fit_degree(&samples, cfg.window)?
        } else {
            FitResult { status: FitStatus::NotStabilized, degree: None, leading_diff: None, stable_from: None }
        };
        if fit.status != FitStatus::NotStabilized || hi >= cfg.cap {
            return Ok((samples, fit));
        }
        let next = (hi * 2).min(cfg.cap);
        let more: Vec<u32> = (hi + 1..=next).collect();
        samples.values.extend(eval(&more)?);
        hi = next;
    }
}

/// Extends stabilized samples to twice their last `n` and refits; the degree
/// and leading difference must not move.
pub fn confirm_fit<F>(samples: &Samples, fit: &FitResult, window: usize, mut eval: F) -> Result<(bool, Samples)>
where
    F: FnMut(&[u32]) -> Result<Vec<u64>>,
{
    let last = samples.n_at(samples.len() - 1);
    let more: Vec<u32> = (last + 1..=2 * last).collect();
    let mut extended = samples.clone();
    extended.values.extend(eval(&more)?);
    let refit = fit_degree(&extended, window)?;
    let same = refit.status == fit.status && refit.degree == fit.degree && refit.leading_diff == fit.leading_diff;
    Ok((same, extended))
}
