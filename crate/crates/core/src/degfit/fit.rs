use crate::error::{Error, Result};

/// Consecutive values `f(n_min), f(n_min + 1), ...` of a length function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Samples {
    pub n_min: u32,
    pub values: Vec<u64>,
}

impl Samples {
    pub fn new(n_min: u32, values: Vec<u64>) -> Self {
        Samples { n_min, values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// The `n` at which sample `k` was taken.
    pub fn n_at(&self, k: usize) -> u32 {
        self.n_min + k as u32
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FitStatus {
    Stabilized,
    IdenticallyZero,
    NotStabilized,
}

impl FitStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            FitStatus::Stabilized => "stabilized",
            FitStatus::IdenticallyZero => "identically_zero",
            FitStatus::NotStabilized => "not_stabilized",
        }
    }
}

/// Outcome of degree detection by finite differences.
///
/// When stabilized, `leading_diff` is the constant `degree`-th difference,
/// i.e. `degree!` times the leading coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FitResult {
    pub status: FitStatus,
    pub degree: Option<u32>,
    pub leading_diff: Option<i64>,
    pub stable_from: Option<u32>,
}

impl FitResult {
    fn unstable() -> Self {
        FitResult { status: FitStatus::NotStabilized, degree: None, leading_diff: None, stable_from: None }
    }

    pub fn is_stabilized(&self) -> bool {
        self.status == FitStatus::Stabilized
    }
}

fn difference(v: &[i64]) -> Vec<i64> {
    v.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Least `r` whose `r`-th differences are a positive constant over the
/// trailing `window` while the `(r+1)`-th differences vanish there.
pub fn fit_degree(s: &Samples, window: usize) -> Result<FitResult> {
    if window < 2 {
        return Err(Error::InvalidWindow(window));
    }
    let len = s.values.len();
    if len < window + 1 {
        return Err(Error::TooFewSamples { needed: window + 1, got: len });
    }
    let values: Vec<i64> = s.values.iter().map(|&v| v as i64).collect();
    if values[len - window..].iter().all(|&v| v == 0) {
        let first = values.iter().rposition(|&v| v != 0).map_or(0, |k| k + 1);
        return Ok(FitResult {
            status: FitStatus::IdenticallyZero,
            degree: None,
            leading_diff: None,
            stable_from: Some(s.n_at(first)),
        });
    }
    let mut cur = values;
    let mut r = 0u32;
    // Δ^{r+1} needs at least `window` entries: len - r - 1 >= window
    while (r as usize) + 1 + window <= len {
        let next = difference(&cur);
        let tail = &next[next.len() - window..];
        if tail.iter().all(|&v| v == 0) {
            let lead = *cur.last().expect("nonempty");
            if lead <= 0 {
                return Ok(FitResult::unstable());
            }
            let from = next.iter().rposition(|&v| v != 0).map_or(0, |k| k + 1);
            return Ok(FitResult {
                status: FitStatus::Stabilized,
                degree: Some(r),
                leading_diff: Some(lead),
                stable_from: Some(s.n_at(from)),
            });
        }
        cur = next;
        r += 1;
    }
    Ok(FitResult::unstable())
}

/// `lim (c!/n^c) f(n)` read off a fit: the leading difference when the degree
/// is `c`, zero below it.
pub fn eta_value(f: &FitResult, c: u32) -> Result<u64> {
    match f.status {
        FitStatus::IdenticallyZero => Ok(0),
        FitStatus::NotStabilized => Err(Error::HypothesisViolation("fit did not stabilize".into())),
        FitStatus::Stabilized => {
            let degree = f.degree.expect("stabilized fits carry a degree");
            if degree > c {
                return Err(Error::DegreeExceedsC { degree, c });
            }
            Ok(if degree == c { f.leading_diff.expect("stabilized") as u64 } else { 0 })
        }
    }
}
