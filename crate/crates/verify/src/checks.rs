//! The theorem and property checks, each reduced to integer comparisons.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use hilbtor_core::algebra::{Monomial, Polynomial, Ring};
use hilbtor_core::degfit::{
    confirm_fit, eta_value, fit_adaptive, predict_degree, sample_psi, FitConfig, FitResult, FitStatus, SampleOptions,
    Samples, Target,
};
use hilbtor_core::exec::Execution;
use hilbtor_core::finlen::{annihilator_dim, complex_homology_lengths_with, graded_piece_length, FiniteQuotient};
use hilbtor_core::groebner::{normal_form, Ideal, ModVector, PresentedModule};
use hilbtor_core::homalg::{
    cone, dim_total_homology, direct_sum, free_resolution, hom_dual, in_kbf, is_zero_object, koszul_complex, minimize,
    mult_chain_map, shift, FreeComplex,
};
use hilbtor_core::Error as CoreError;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::scenario::{CheckSpec, Scenario};

macro_rules! check_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Identifier of a check, written as in scenario files.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId { $($variant),* }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self { $(CheckId::$variant => $name),* }
            }
        }

        impl FromStr for CheckId {
            type Err = String;
            fn from_str(s: &str) -> Result<Self, String> {
                match s {
                    $($name => Ok(CheckId::$variant),)*
                    other => Err(format!("unknown check id `{other}`")),
                }
            }
        }
    };
}

check_ids! {
    ThmMain => "THM-MAIN",
    ThmMaxDim => "THM-MAXDIM",
    ThmMPrim => "THM-MPRIM",
    CorRegCor => "COR-REGCOR",
    CorCmMax => "COR-CMMAX",
    LemProjSupp => "LEM-PROJSUPP",
    PropWtf => "PROP-WTF",
    PropSubadd => "PROP-SUBADD",
    PropSubadd2 => "PROP-SUBADD2",
    PropNonvanish => "PROP-NONVANISH",
    ConeDrop => "CONE-DROP",
    KoszulTop => "KOSZUL-TOP",
    Bound26 => "BOUND-26",
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CheckId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Knobs for a suite run.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub n_max: u32,
    pub window: usize,
    pub cap: u32,
    pub budget: Duration,
    pub exec: Execution,
    /// Refit every stabilized fit on twice as many samples.
    pub confirm: bool,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            n_max: 8,
            window: 4,
            cap: 64,
            budget: Duration::from_secs(120),
            exec: Execution::default(),
            confirm: false,
            seed: 0,
        }
    }
}

impl RunOptions {
    /// Takes `n_max` and `window` from the scenario's `fit` block.
    pub fn for_scenario(s: &Scenario) -> Self {
        RunOptions { n_max: s.file.fit.n_max, window: s.file.fit.window, ..Default::default() }
    }

    fn fit_config(&self) -> FitConfig {
        FitConfig { n_max: self.n_max.max(self.window as u32 + 1), cap: self.cap, window: self.window }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// Serialized view of a [`FitResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FitSummary {
    pub status: &'static str,
    pub degree: Option<u32>,
    pub leading_diff: Option<i64>,
    pub stable_from: Option<u32>,
}

impl From<&FitResult> for FitSummary {
    fn from(f: &FitResult) -> Self {
        FitSummary { status: f.status.as_str(), degree: f.degree, leading_diff: f.leading_diff, stable_from: f.stable_from }
    }
}

/// One sub-measurement of a check, such as one complex of THM-MAIN.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Part {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fitted: Option<FitSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted: Option<i32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub samples: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: CheckId,
    pub inputs: BTreeMap<String, String>,
    pub fitted: Option<FitSummary>,
    pub predicted: Option<i32>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub samples: Vec<u64>,
    pub millis: u64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Part>,
}

impl CheckOutcome {
    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }

    /// The fitted degree, when there is one.
    pub fn degree(&self) -> Option<u32> {
        self.fitted.and_then(|f| f.degree)
    }
}

/// Failure inside a check body.
enum Abort {
    Skip(String),
    Fail(String),
}

impl From<CoreError> for Abort {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::HypothesisViolation(msg) => Abort::Skip(msg),
            CoreError::TimedOut => Abort::Fail("timed out".into()),
            other => Abort::Fail(other.to_string()),
        }
    }
}

type CheckResult = Result<Body, Abort>;

fn skip<T>(reason: impl Into<String>) -> Result<T, Abort> {
    Err(Abort::Skip(reason.into()))
}

/// What a check body reports back.
#[derive(Default)]
struct Body {
    pass: bool,
    reason: Option<String>,
    fitted: Option<FitResult>,
    predicted: Option<i32>,
    samples: Vec<u64>,
    parts: Vec<Part>,
}

impl Body {
    fn verdict(pass: bool, reason: impl Into<String>) -> Self {
        Body { pass, reason: Some(reason.into()), ..Default::default() }
    }
}

/// A fitted length function, optionally refit at a second prime.
struct Fit {
    samples: Samples,
    result: FitResult,
    problem: Option<String>,
}

impl Fit {
    fn degree(&self) -> Option<i32> {
        match self.result.status {
            FitStatus::Stabilized => self.result.degree.map(|d| d as i32),
            _ => None,
        }
    }

    fn is_clean(&self) -> bool {
        self.problem.is_none() && self.result.is_stabilized()
    }

    fn describe(&self) -> String {
        if let Some(p) = &self.problem {
            return p.clone();
        }
        match self.result.status {
            FitStatus::Stabilized => format!("degree {}", self.result.degree.unwrap_or(0)),
            FitStatus::IdenticallyZero => "identically zero".into(),
            FitStatus::NotStabilized => format!("did not stabilize by n = {}", self.samples.len()),
        }
    }

    fn part(&self, name: &str, predicted: Option<i32>, pass: bool) -> Part {
        Part {
            name: name.to_string(),
            status: if pass { Status::Pass } else { Status::Fail },
            fitted: Some(FitSummary::from(&self.result)),
            predicted,
            reason: Some(self.describe()),
            samples: self.samples.values.clone(),
        }
    }
}

struct Ctx<'a> {
    s: &'a Scenario,
    second: Option<Scenario>,
    opts: RunOptions,
    deadline: Instant,
    rng: ChaCha8Rng,
}

fn reinterpret_module(m: &PresentedModule, ring: &Ring) -> Result<PresentedModule, CoreError> {
    let rels = m
        .relations()
        .iter()
        .map(|v| {
            let comps = v.components().iter().map(|p| p.reinterpret(ring)).collect::<Result<Vec<_>, _>>()?;
            ModVector::from_components(ring, &comps)
        })
        .collect::<Result<Vec<_>, _>>()?;
    PresentedModule::new(ring, m.ambient().clone(), rels)
}

impl Ctx<'_> {
    fn sample_opts(&self) -> SampleOptions {
        SampleOptions { exec: self.opts.exec, deadline: Some(self.deadline) }
    }

    fn fit_once(&self, x: &FreeComplex, m: &PresentedModule, ideal: &[Polynomial]) -> Result<(Samples, FitResult), Abort> {
        let opts = self.sample_opts();
        let eval = |ns: &[u32]| sample_psi(x, m, ideal, ns, opts).map(|s| s.values);
        Ok(fit_adaptive(&self.opts.fit_config(), eval)?)
    }

    /// Fits `ψ_X^{M,I}`, then confirms and cross-checks at the second prime as configured.
    fn fit_psi(&self, x: &FreeComplex, m: &PresentedModule) -> Result<Fit, Abort> {
        let (mut samples, result) = self.fit_once(x, m, &self.s.ideal)?;
        let mut problem = None;
        if self.opts.confirm && result.is_stabilized() {
            let opts = self.sample_opts();
            let eval = |ns: &[u32]| sample_psi(x, m, &self.s.ideal, ns, opts).map(|s| s.values);
            let (same, extended) = confirm_fit(&samples, &result, self.opts.window, eval)?;
            if !same {
                problem = Some(format!("fit moved when extended to n = {}", extended.len()));
            }
            samples = extended;
        }
        if let Some(t) = &self.second {
            let x2 = x.reinterpret(&t.ring)?;
            let m2 = reinterpret_module(m, &t.ring)?;
            let (_, r2) = self.fit_once(&x2, &m2, &t.ideal)?;
            if (r2.status, r2.degree) != (result.status, result.degree) && problem.is_none() {
                problem = Some(format!(
                    "characteristic {} gives {} {:?}, characteristic {} gives {} {:?}",
                    self.s.characteristic(),
                    result.status.as_str(),
                    result.degree,
                    t.characteristic(),
                    r2.status.as_str(),
                    r2.degree
                ));
            }
        }
        Ok(Fit { samples, result, problem })
    }

    fn psi_values(&self, x: &FreeComplex, m: &PresentedModule) -> Result<Vec<u64>, Abort> {
        let ns: Vec<u32> = (1..=self.opts.n_max).collect();
        Ok(sample_psi(x, m, &self.s.ideal, &ns, self.sample_opts())?.values)
    }

    /// A random linear form with small coefficients, reproducible from the seed.
    fn random_linear_form(&mut self) -> Polynomial {
        let ring = &self.s.ring;
        let d = ring.nvars();
        let terms = (0..d).map(|i| (Monomial::var(d, i), self.rng.gen_range(1..=97u32))).collect();
        Polynomial::from_terms(ring, terms)
    }
}

struct Params<'a> {
    spec: &'a CheckSpec,
    s: &'a Scenario,
    inputs: BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    fn str(&self, key: &str) -> Result<Option<&'a str>, Abort> {
        match self.spec.params.get(key) {
            None => Ok(None),
            Some(serde_json::Value::String(v)) => Ok(Some(v.as_str())),
            Some(other) => Err(Abort::Fail(format!("param `{key}` should be a string, got {other}"))),
        }
    }

    fn list(&self, key: &str) -> Result<Option<Vec<&'a str>>, Abort> {
        match self.spec.params.get(key) {
            None => Ok(None),
            Some(serde_json::Value::Array(items)) => items
                .iter()
                .map(|v| v.as_str().ok_or_else(|| Abort::Fail(format!("param `{key}` should list strings"))))
                .collect::<Result<Vec<_>, _>>()
                .map(Some),
            Some(serde_json::Value::String(v)) => Ok(Some(vec![v.as_str()])),
            Some(other) => Err(Abort::Fail(format!("param `{key}` should be a list, got {other}"))),
        }
    }

    fn module(&mut self, key: &str, default: &str) -> Result<&'a PresentedModule, Abort> {
        let name = self.str(key)?.unwrap_or(if key == "module" && self.s.module("M").is_some() { "M" } else { default });
        self.inputs.insert(key.to_string(), name.to_string());
        self.s.module(name).ok_or_else(|| Abort::Fail(format!("unknown module `{name}`")))
    }

    fn complex_named(&self, name: &str) -> Result<&'a FreeComplex, Abort> {
        self.s.complex(name).ok_or_else(|| Abort::Fail(format!("unknown complex `{name}`")))
    }

    /// The complex under `key`, else the first named complex, else Koszul on the variables.
    fn complex(&mut self, key: &str) -> Result<(String, FreeComplex), Abort> {
        let named = self.str(key)?.map(str::to_string).or_else(|| {
            if key == "complex" {
                self.s.complexes.keys().next().cloned()
            } else {
                None
            }
        });
        let out = match named {
            Some(n) => (n.clone(), self.complex_named(&n)?.clone()),
            None => ("koszul()".to_string(), koszul_complex(&self.s.ring, &self.s.variables())?),
        };
        self.inputs.insert(key.to_string(), out.0.clone());
        Ok(out)
    }

    fn polynomial(&mut self, key: &str, ctx: &mut Ctx<'_>) -> Result<Polynomial, Abort> {
        let f = match self.str(key)? {
            Some(t) => self.s.polynomial(t).map_err(|e| Abort::Fail(e.to_string()))?,
            None => ctx.random_linear_form(),
        };
        if !f.is_homogeneous() || f.is_zero() {
            return Err(Abort::Fail(format!("`{f}` must be a nonzero homogeneous element")));
        }
        self.inputs.insert(key.to_string(), f.to_string());
        Ok(f)
    }
}

fn ideal_is_m_primary(s: &Scenario) -> Result<bool, Abort> {
    Ok(Ideal::new(&s.ring, s.ideal.clone())?.is_m_primary())
}

fn require_m_primary(s: &Scenario) -> Result<(), Abort> {
    if ideal_is_m_primary(s)? {
        Ok(())
    } else {
        skip("I is not m-primary")
    }
}

fn require_positive_dim(m: &PresentedModule) -> Result<i32, Abort> {
    match m.krull_dim() {
        d if d > 0 => Ok(d),
        0 => skip("dim M = 0 violates hypothesis dim M > 0"),
        _ => skip("M = 0 violates hypothesis M ≠ 0"),
    }
}

fn require_proper_ideal(s: &Scenario) -> Result<(), Abort> {
    if s.ideal.iter().any(Polynomial::is_unit) {
        skip("I = A violates hypothesis I ≠ A")
    } else {
        Ok(())
    }
}

/// `ψ` is defined when every `H(X ⊗ M/IⁿM)` has finite length.
fn require_finite_psi(s: &Scenario, x: &FreeComplex) -> Result<(), Abort> {
    if ideal_is_m_primary(s)? || in_kbf(x)? {
        Ok(())
    } else {
        skip("ψ is undefined: I is not m-primary and X has homology of positive dimension")
    }
}

fn require_kbf_nonzero(x: &FreeComplex) -> Result<(), Abort> {
    if is_zero_object(x)? {
        skip("X is zero in the homotopy category")
    } else if !in_kbf(x)? {
        skip("X does not have finite-length homology")
    } else {
        Ok(())
    }
}

fn resolve(l: &PresentedModule) -> Result<FreeComplex, Abort> {
    Ok(free_resolution(l, l.ring().nvars())?)
}

/// Predicted-degree check of a single fit.
fn single_fit(fit: Fit, predicted: i32) -> Body {
    let pass = fit.is_clean() && fit.degree() == Some(predicted);
    let reason = if pass {
        format!("fitted degree {predicted}")
    } else {
        format!("{}, predicted {predicted}", fit.describe())
    };
    Body { pass, reason: Some(reason), fitted: Some(fit.result), predicted: Some(predicted), samples: fit.samples.values, parts: Vec::new() }
}

fn thm_main(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    if m.is_zero() {
        return skip("M = 0 violates hypothesis M ≠ 0");
    }
    require_proper_ideal(p.s)?;
    let names: Vec<String> = match p.list("complexes")? {
        Some(v) => v.into_iter().map(str::to_string).collect(),
        None => p.s.complexes.keys().cloned().collect(),
    };
    p.inputs.insert("complexes".into(), names.join(","));
    let mut parts = Vec::new();
    let mut fits = Vec::new();
    for name in &names {
        let x = p.complex_named(name)?;
        match require_kbf_nonzero(x) {
            Ok(()) => {}
            Err(Abort::Skip(reason)) => {
                parts.push(Part {
                    name: name.clone(),
                    status: Status::Skipped,
                    fitted: None,
                    predicted: None,
                    reason: Some(reason),
                    samples: vec![],
                });
                continue;
            }
            Err(e) => return Err(e),
        }
        let fit = ctx.fit_psi(x, m)?;
        fits.push((name.clone(), fit));
    }
    if fits.len() < 2 {
        return skip("fewer than two nonzero complexes with finite-length homology");
    }
    let predicted = match predict_degree(Target::MaxDim, m, &p.s.ideal) {
        Ok(pr) => Some(pr.predicted),
        Err(_) => None,
    };
    let reference = fits[0].1.degree();
    let mut pass = reference.is_some();
    for (name, fit) in &fits {
        let ok = fit.is_clean() && fit.degree() == reference;
        pass &= ok;
        parts.push(fit.part(name, predicted, ok));
    }
    parts.sort_by(|a, b| a.name.cmp(&b.name));
    let (_, first) = fits.swap_remove(0);
    let reason = match (pass, reference) {
        (true, Some(r)) => format!("{} complexes share degree {r}", fits.len() + 1),
        _ => "fitted degrees disagree or did not stabilize".to_string(),
    };
    Ok(Body { pass, reason: Some(reason), fitted: Some(first.result), predicted, samples: first.samples.values, parts })
}

fn thm_maxdim(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let (_, x) = p.complex("complex")?;
    require_positive_dim(m)?;
    require_m_primary(p.s)?;
    require_kbf_nonzero(&x)?;
    let predicted = predict_degree(Target::MaxDim, m, &p.s.ideal)?.predicted;
    Ok(single_fit(ctx.fit_psi(&x, m)?, predicted))
}

fn thm_mprim(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let (_, x) = p.complex("complex")?;
    require_positive_dim(m)?;
    require_m_primary(p.s)?;
    if is_zero_object(&x)? {
        return skip("X is zero in the homotopy category");
    }
    let pr = predict_degree(Target::Complex(&x), m, &p.s.ideal)?;
    p.inputs.insert("dim_h".into(), pr.dim_h.unwrap_or(-1).to_string());
    Ok(single_fit(ctx.fit_psi(&x, m)?, pr.predicted))
}

fn bound_26(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let (_, x) = p.complex("complex")?;
    require_finite_psi(p.s, &x)?;
    // the analytic spread is at most dim M, so dim M - 1 stands in for it
    let dim_h = dim_total_homology(&x, m)?;
    let bound = dim_h.max(m.krull_dim() - 1);
    p.inputs.insert("dim_h".into(), dim_h.to_string());
    let fit = ctx.fit_psi(&x, m)?;
    let (pass, reason) = match fit.result.status {
        FitStatus::IdenticallyZero if fit.problem.is_none() => (true, "ψ is eventually zero".to_string()),
        FitStatus::Stabilized if fit.problem.is_none() => {
            let d = fit.degree().unwrap_or(0);
            (d <= bound, format!("fitted degree {d}, bound {bound}"))
        }
        _ => (false, format!("{}, bound {bound}", fit.describe())),
    };
    Ok(Body { pass, reason: Some(reason), fitted: Some(fit.result), predicted: Some(bound), samples: fit.samples.values, parts: Vec::new() })
}

fn modules_list<'a>(p: &mut Params<'a>, key: &str) -> Result<Vec<(String, &'a PresentedModule)>, Abort> {
    let names: Vec<String> = match p.list(key)? {
        Some(v) => v.into_iter().map(str::to_string).collect(),
        None => vec!["k".to_string()],
    };
    p.inputs.insert(key.into(), names.join(","));
    names
        .into_iter()
        .map(|n| {
            let l = p.s.module(&n).ok_or_else(|| Abort::Fail(format!("unknown module `{n}`")))?;
            Ok((n, l))
        })
        .collect()
}

fn cor_cmmax(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let ls = modules_list(p, "L")?;
    require_positive_dim(m)?;
    require_m_primary(p.s)?;
    let mut parts = Vec::new();
    let mut pass = true;
    let mut first = None;
    let mut predicted = None;
    for (name, l) in ls {
        if l.is_zero() {
            return skip(format!("L = {name} is zero"));
        }
        let pr = predict_degree(Target::Module(l), m, &p.s.ideal)?.predicted;
        predicted.get_or_insert(pr);
        let res = resolve(l)?;
        for (kind, x) in [("t", res.clone()), ("e", hom_dual(&res))] {
            let fit = ctx.fit_psi(&x, m)?;
            let ok = fit.is_clean() && fit.degree() == Some(pr);
            pass &= ok;
            parts.push(fit.part(&format!("{kind}({name})"), Some(pr), ok));
            first.get_or_insert(fit);
        }
    }
    let first = first.ok_or_else(|| Abort::Skip("no modules L given".into()))?;
    let reason = if pass { "t and e match the predicted degree" } else { "t or e misses the predicted degree" };
    Ok(Body { pass, reason: Some(reason.into()), fitted: Some(first.result), predicted, samples: first.samples.values, parts })
}

fn cor_regcor(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let ls = modules_list(p, "L")?;
    if m.is_zero() {
        return skip("M = 0 violates hypothesis M ≠ 0");
    }
    require_proper_ideal(p.s)?;
    let mut parts = Vec::new();
    let mut fits = Vec::new();
    for (name, l) in ls {
        if l.is_zero() || l.krull_dim() != 0 {
            return skip(format!("L = {name} is not a nonzero module of finite length"));
        }
        let res = resolve(l)?;
        for (kind, x) in [("t", res.clone()), ("e", hom_dual(&res))] {
            fits.push((format!("{kind}({name})"), ctx.fit_psi(&x, m)?));
        }
    }
    let Some(reference) = fits.first().and_then(|f| f.1.degree()) else {
        let f = fits.into_iter().next().ok_or_else(|| Abort::Skip("no modules L given".into()))?;
        let reason = f.1.describe();
        return Ok(Body { pass: false, reason: Some(reason), fitted: Some(f.1.result), samples: f.1.samples.values, ..Default::default() });
    };
    let mut pass = true;
    for (name, fit) in &fits {
        let ok = fit.is_clean() && fit.degree() == Some(reference);
        pass &= ok;
        parts.push(fit.part(name, None, ok));
    }
    let first = fits.swap_remove(0).1;
    let reason = if pass { format!("all t and e have degree {reference}") } else { "t and e degrees disagree".into() };
    Ok(Body { pass, reason: Some(reason), fitted: Some(first.result), predicted: None, samples: first.samples.values, parts })
}

fn lem_projsupp(p: &mut Params<'_>, _ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let ls = modules_list(p, "L")?;
    if m.is_zero() {
        return skip("M = 0 violates hypothesis M ≠ 0");
    }
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, l) in ls {
        if l.is_zero() {
            return skip(format!("L = {name} is zero"));
        }
        let tensor = m.tensor(l)?.krull_dim();
        let ext = dim_total_homology(&hom_dual(&resolve(l)?), m)?;
        let ok = tensor == ext;
        pass &= ok;
        parts.push(Part {
            name: name.clone(),
            status: if ok { Status::Pass } else { Status::Fail },
            fitted: None,
            predicted: Some(tensor),
            reason: Some(format!("dim M⊗L = {tensor}, dim Ext(L, M) = {ext}")),
            samples: vec![],
        });
    }
    let reason = if pass { "supports agree" } else { "dimension of M⊗L differs from that of Ext" };
    Ok(Body { pass, reason: Some(reason.into()), parts, ..Default::default() })
}

fn eta_of(ctx: &Ctx<'_>, x: &FreeComplex, m: &PresentedModule, c: u32) -> Result<(u64, Fit), Abort> {
    let fit = ctx.fit_psi(x, m)?;
    if let Some(problem) = &fit.problem {
        return Err(Abort::Fail(problem.clone()));
    }
    let eta = eta_value(&fit.result, c).map_err(|e| match e {
        CoreError::HypothesisViolation(_) => Abort::Fail(format!("ψ did not stabilize: {:?}", fit.samples.values)),
        other => Abort::Fail(other.to_string()),
    })?;
    Ok((eta, fit))
}

fn prop_wtf(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let (xn, x) = p.complex("complex")?;
    let (_, y) = p.complex("second")?;
    if m.is_zero() {
        return skip("M = 0 violates hypothesis M ≠ 0");
    }
    require_proper_ideal(p.s)?;
    for z in [&x, &y] {
        if !in_kbf(z)? {
            return skip("η is defined on complexes with finite-length homology");
        }
    }
    let f = p.polynomial("f", ctx)?;
    let reference = koszul_complex(&p.s.ring, &p.s.variables())?;
    let ref_fit = ctx.fit_psi(&reference, m)?;
    let c = match ref_fit.degree() {
        Some(c) if ref_fit.is_clean() => c as u32,
        _ => return Ok(Body::verdict(false, format!("reference fit: {}", ref_fit.describe()))),
    };
    p.inputs.insert("c".into(), c.to_string());
    let mut parts = Vec::new();
    let mut pass = true;
    let mut record = |name: &str, ok: bool, detail: String| {
        pass &= ok;
        parts.push(Part {
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            fitted: None,
            predicted: None,
            reason: Some(detail),
            samples: vec![],
        });
    };
    let (e0, _) = eta_of(ctx, &FreeComplex::zero(&p.s.ring), m, c)?;
    record("zero", e0 == 0, format!("η(0) = {e0}"));
    let (ex, fx) = eta_of(ctx, &x, m, c)?;
    let (ey, _) = eta_of(ctx, &y, m, c)?;
    // u64 values are non-negative by type; what can go wrong is a degree above c
    record("nonnegative", true, format!("η(X) = {ex}, η(Y) = {ey}"));
    let (es, _) = eta_of(ctx, &direct_sum(&x, &y)?, m, c)?;
    record("additive", es == ex + ey, format!("η(X⊕Y) = {es}, η(X) + η(Y) = {}", ex + ey));
    let (eh, _) = eta_of(ctx, &shift(&x, 1), m, c)?;
    record("shift", eh == ex, format!("η(ΣX) = {eh}, η(X) = {ex}"));
    let g = mult_chain_map(&x, &f)?;
    let (et, _) = eta_of(ctx, g.target(), m, c)?;
    let (ec, _) = eta_of(ctx, &cone(&g), m, c)?;
    record("triangle", ec <= ex + et, format!("η(cone {f}) = {ec}, η(X) + η(X') = {}", ex + et));
    let reason = if pass { format!("axioms hold with c = {c} on {xn}") } else { "an η axiom fails".into() };
    Ok(Body { pass, reason: Some(reason), fitted: Some(fx.result), predicted: None, samples: fx.samples.values, parts })
}

/// Pointwise comparison over `n = 1..n_max`.
fn pointwise(name: &str, lhs: &[u64], rhs: &[u64], op: &str) -> Part {
    let bad = lhs.iter().zip(rhs).position(|(a, b)| a > b);
    Part {
        name: name.to_string(),
        status: if bad.is_none() { Status::Pass } else { Status::Fail },
        fitted: None,
        predicted: None,
        reason: Some(match bad {
            None => format!("{op} holds for n = 1..{}", lhs.len()),
            Some(k) => format!("{op} fails at n = {}: {} > {}", k + 1, lhs[k], rhs[k]),
        }),
        samples: lhs.to_vec(),
    }
}

fn cone_setup(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> Result<(PresentedModule, FreeComplex, FreeComplex, FreeComplex), Abort> {
    let m = p.module("module", "A")?.clone();
    let (_, x) = p.complex("complex")?;
    let f = p.polynomial("f", ctx)?;
    let g = mult_chain_map(&x, &f)?;
    let c = cone(&g);
    require_finite_psi(p.s, &x)?;
    Ok((m, x, g.target().clone(), c))
}

fn prop_subadd(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let (m, x, y, c) = cone_setup(p, ctx)?;
    // termwise 0 -> Y -> cone -> X[1] -> 0
    let split = c.indices().chain(x.indices()).chain(y.indices()).all(|i| c.rank(i) == y.rank(i) + x.rank(i + 1));
    let px = ctx.psi_values(&x, &m)?;
    let py = ctx.psi_values(&y, &m)?;
    let pc = ctx.psi_values(&c, &m)?;
    let sum: Vec<u64> = px.iter().zip(&py).map(|(a, b)| a + b).collect();
    let mut parts = vec![Part {
        name: "split".into(),
        status: if split { Status::Pass } else { Status::Fail },
        fitted: None,
        predicted: None,
        reason: Some("cone^i = Y^i ⊕ X^{i+1} termwise".into()),
        samples: vec![],
    }];
    parts.push(pointwise("subadditive", &pc, &sum, "ψ_cone ≤ ψ_X + ψ_Y"));
    let pass = parts.iter().all(|q| q.status == Status::Pass);
    Ok(Body { pass, reason: parts[1].reason.clone(), samples: pc, parts, ..Default::default() })
}

fn prop_subadd2(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let (m, x, _, c) = cone_setup(p, ctx)?;
    let px = ctx.psi_values(&x, &m)?;
    let pc = ctx.psi_values(&c, &m)?;
    let twice: Vec<u64> = px.iter().map(|v| 2 * v).collect();
    let part = pointwise("double", &pc, &twice, "ψ_cone ≤ 2ψ_X");
    Ok(Body { pass: part.status == Status::Pass, reason: part.reason.clone(), samples: pc, parts: vec![part], ..Default::default() })
}

/// Defaults to the Koszul complex on the first variable, whose homology has
/// positive dimension in two or more variables.
fn cone_drop(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let x = match p.str("complex")? {
        Some(_) => p.complex("complex")?.1,
        None => {
            p.inputs.insert("complex".into(), format!("koszul({})", p.s.ring.var_names()[0]));
            koszul_complex(&p.s.ring, &p.s.variables()[..1])?
        }
    };
    let f = p.polynomial("f", ctx)?;
    let a = dim_total_homology(&x, m)?;
    if a <= 0 {
        return skip(format!("dim H(X⊗M) = {a}; the drop needs positive dimension"));
    }
    let b = dim_total_homology(&cone(&mult_chain_map(&x, &f)?), m)?;
    p.inputs.insert("dim_h".into(), a.to_string());
    Ok(Body {
        pass: b == a - 1,
        reason: Some(format!("dim H(X⊗M) = {a}, dim H(cone⊗M) = {b}")),
        predicted: Some(a - 1),
        ..Default::default()
    })
}

fn prop_nonvanish(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    let (_, x) = p.complex("complex")?;
    if m.is_zero() {
        return skip("M = 0 violates hypothesis M ≠ 0");
    }
    require_proper_ideal(p.s)?;
    let xm = minimize(&x);
    if xm.is_zero_complex() {
        return skip("the minimal complex is zero");
    }
    require_finite_psi(p.s, &xm)?;
    let values = ctx.psi_values(&xm, m)?;
    let bad = values.iter().position(|&v| v == 0);
    let reason = match bad {
        None => format!("ψ > 0 for n = 1..{}", values.len()),
        Some(k) => format!("ψ({}) = 0", k + 1),
    };
    Ok(Body { pass: bad.is_none(), reason: Some(reason), samples: values, ..Default::default() })
}

fn in_ideal(s: &Scenario, f: &Polynomial) -> Result<bool, Abort> {
    let gb = Ideal::new(&s.ring, s.ideal.clone())?.groebner();
    Ok(normal_form(&ModVector::from_poly(f), &gb)?.is_zero())
}

/// A subset of the ideal generators that is a system of parameters for `M`,
/// else all of them.
fn default_koszul_elems(s: &Scenario, m: &PresentedModule) -> Result<Vec<Polynomial>, Abort> {
    let gens = &s.ideal;
    let d = m.krull_dim().max(0) as usize;
    if d <= gens.len() && gens.len() <= 16 {
        for mask in 0u32..(1 << gens.len()) {
            if mask.count_ones() as usize != d {
                continue;
            }
            let pick: Vec<Polynomial> = (0..gens.len()).filter(|k| mask >> k & 1 == 1).map(|k| gens[k].clone()).collect();
            if m.quotient_by_ideal(&pick)?.krull_dim() <= 0 {
                return Ok(pick);
            }
        }
    }
    Ok(gens.clone())
}

fn koszul_top(p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    let m = p.module("module", "A")?;
    require_m_primary(p.s)?;
    let elems = match p.list("elems")? {
        Some(texts) => texts
            .iter()
            .map(|t| p.s.polynomial(t).map_err(|e| Abort::Fail(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?,
        None => default_koszul_elems(p.s, m)?,
    };
    if elems.is_empty() {
        return skip("no Koszul elements");
    }
    let names: Vec<String> = elems.iter().map(|f| f.to_string()).collect();
    p.inputs.insert("elems".into(), names.join(","));
    let all_in_ideal = elems.iter().map(|f| in_ideal(p.s, f)).collect::<Result<Vec<_>, _>>()?.into_iter().all(|b| b);
    let k = koszul_complex(&p.s.ring, &elems)?;
    let top = -(elems.len() as i32);
    let mut tops = Vec::new();
    let mut annis = Vec::new();
    let mut pieces = Vec::new();
    for n in 1..=ctx.opts.n_max {
        if Instant::now() > ctx.deadline {
            return Err(Abort::Fail("timed out".into()));
        }
        let q = FiniteQuotient::new(m, &p.s.ideal, n)?;
        tops.push(complex_homology_lengths_with(&k, &q, ctx.opts.exec)?.get(top));
        annis.push(annihilator_dim(&q, &elems) as u64);
        if all_in_ideal {
            pieces.push(graded_piece_length(m, &p.s.ideal, n)?);
        }
    }
    let mut parts = vec![Part {
        name: "identity".into(),
        status: if tops == annis { Status::Pass } else { Status::Fail },
        fitted: None,
        predicted: None,
        reason: Some(format!("top cohomology {tops:?}, annihilator {annis:?}")),
        samples: tops.clone(),
    }];
    if all_in_ideal {
        let mut lower = pointwise("lower_bound", &pieces, &tops, "ℓ(I^{n-1}M/I^nM) ≤ top");
        lower.samples = pieces;
        parts.push(lower);
    } else {
        parts.push(Part {
            name: "lower_bound".into(),
            status: Status::Skipped,
            fitted: None,
            predicted: None,
            reason: Some("elements do not all lie in I".into()),
            samples: vec![],
        });
    }
    let pass = parts.iter().all(|q| q.status != Status::Fail);
    let reason = if pass { "identity and bound hold" } else { "Koszul top cohomology check failed" };
    Ok(Body { pass, reason: Some(reason.into()), samples: tops, parts, ..Default::default() })
}

fn dispatch(id: CheckId, p: &mut Params<'_>, ctx: &mut Ctx<'_>) -> CheckResult {
    match id {
        CheckId::ThmMain => thm_main(p, ctx),
        CheckId::ThmMaxDim => thm_maxdim(p, ctx),
        CheckId::ThmMPrim => thm_mprim(p, ctx),
        CheckId::CorRegCor => cor_regcor(p, ctx),
        CheckId::CorCmMax => cor_cmmax(p, ctx),
        CheckId::LemProjSupp => lem_projsupp(p, ctx),
        CheckId::PropWtf => prop_wtf(p, ctx),
        CheckId::PropSubadd => prop_subadd(p, ctx),
        CheckId::PropSubadd2 => prop_subadd2(p, ctx),
        CheckId::PropNonvanish => prop_nonvanish(p, ctx),
        CheckId::ConeDrop => cone_drop(p, ctx),
        CheckId::KoszulTop => koszul_top(p, ctx),
        CheckId::Bound26 => bound_26(p, ctx),
    }
}

/// Runs one check; engine errors become failed outcomes.
pub fn run_check(s: &Scenario, index: usize, spec: &CheckSpec, opts: &RunOptions) -> CheckOutcome {
    let start = Instant::now();
    let mut inputs = BTreeMap::new();
    inputs.insert("ideal".to_string(), s.file.ideal.join(","));
    let mut params = Params { spec, s, inputs };
    let second = match s.file.fit.second_prime {
        Some(q) if q != s.characteristic() => match s.at_prime(q) {
            Ok(t) => Some(t),
            Err(e) => return failed_outcome(spec.id, params.inputs, format!("second prime: {e}"), start),
        },
        _ => None,
    };
    let mut ctx = Ctx {
        s,
        second,
        opts: *opts,
        deadline: start + opts.budget,
        rng: ChaCha8Rng::seed_from_u64(opts.seed ^ (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15)),
    };
    let result = dispatch(spec.id, &mut params, &mut ctx);
    let inputs = params.inputs;
    let millis = start.elapsed().as_millis() as u64;
    match result {
        Ok(b) => CheckOutcome {
            check: spec.id,
            inputs,
            fitted: b.fitted.as_ref().map(FitSummary::from),
            predicted: b.predicted,
            status: if b.pass { Status::Pass } else { Status::Fail },
            reason: b.reason,
            samples: b.samples,
            millis,
            parts: b.parts,
        },
        Err(Abort::Skip(reason)) => CheckOutcome {
            check: spec.id,
            inputs,
            fitted: None,
            predicted: None,
            status: Status::Skipped,
            reason: Some(reason),
            samples: vec![],
            millis,
            parts: vec![],
        },
        Err(Abort::Fail(reason)) => {
            let reason = if reason == "timed out" { format!("timed out after {} s", opts.budget.as_secs()) } else { reason };
            failed_outcome(spec.id, inputs, reason, start)
        }
    }
}

fn failed_outcome(check: CheckId, inputs: BTreeMap<String, String>, reason: String, start: Instant) -> CheckOutcome {
    CheckOutcome {
        check,
        inputs,
        fitted: None,
        predicted: None,
        status: Status::Fail,
        reason: Some(reason),
        samples: vec![],
        millis: start.elapsed().as_millis() as u64,
        parts: vec![],
    }
}

/// One outcome per requested check, in scenario order.
pub fn run_checks(s: &Scenario, opts: &RunOptions) -> Vec<CheckOutcome> {
    s.checks.iter().enumerate().map(|(k, c)| run_check(s, k, c, opts)).collect()
}
