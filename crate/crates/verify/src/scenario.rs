//! Scenario files: a ring, an ideal, named modules and complexes, and the
//! checks to run on them.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use hilbtor_core::algebra::{parse_polynomial, Polynomial, Ring};
use hilbtor_core::groebner::{FreeModuleSpec, ModVector, PresentedModule};
use hilbtor_core::homalg::{
    cone, direct_sum, free_resolution, GradedMap, hom_dual, koszul_complex, minimize, mult_chain_map, shift, taylor_complex,
    FreeComplex,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::checks::CheckId;
use crate::expr::{parse_complex_expr, ComplexExpr};

pub const DEFAULT_CHAR: u32 = 32003;

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("cannot read scenario: {0}")]
    Io(#[from] std::io::Error),
}

fn invalid(field: impl Into<String>, message: impl std::fmt::Display) -> ScenarioError {
    ScenarioError::Validation { field: field.into(), message: message.to_string() }
}

fn default_char() -> u32 {
    DEFAULT_CHAR
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub vars: Vec<String>,
    #[serde(rename = "char", default = "default_char")]
    pub characteristic: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub ambient_rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub twists: Vec<i32>,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

impl ModuleFile {
    /// `A / (gens)` as a cyclic module.
    pub fn cyclic(gens: &[&str]) -> Self {
        ModuleFile {
            ambient_rank: 1,
            twists: Vec::new(),
            relations: gens.iter().map(|g| vec![g.to_string()]).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckFile {
    pub id: String,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub params: serde_json::Map<String, serde_json::Value>,
}

/// A complex either as a constructor expression or written out in full.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexFile {
    Expr(String),
    Explicit(ExplicitComplex),
}

impl From<&str> for ComplexFile {
    fn from(s: &str) -> Self {
        ComplexFile::Expr(s.to_string())
    }
}

/// Terms `X^lo, X^{lo+1}, ...` given by generator degrees, and for each
/// consecutive pair the matrix of `d` (rows indexed by the target).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitComplex {
    pub lo: i32,
    pub twists: Vec<Vec<i32>>,
    #[serde(default)]
    pub maps: Vec<Vec<Vec<String>>>,
}

fn default_n_max() -> u32 {
    8
}

fn default_window() -> usize {
    4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitFile {
    #[serde(default = "default_n_max")]
    pub n_max: u32,
    #[serde(default = "default_window")]
    pub window: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_prime: Option<u32>,
}

impl Default for FitFile {
    fn default() -> Self {
        FitFile { n_max: default_n_max(), window: default_window(), second_prime: None }
    }
}

/// The on-disk form of a scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub ring: RingFile,
    pub ideal: Vec<String>,
    #[serde(default)]
    pub modules: BTreeMap<String, ModuleFile>,
    #[serde(default)]
    pub complexes: BTreeMap<String, ComplexFile>,
    #[serde(default)]
    pub checks: Vec<CheckFile>,
    #[serde(default)]
    pub fit: FitFile,
}

impl ScenarioFile {
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        serde_json::from_str(text).map_err(|e| ScenarioError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSpec {
    pub id: CheckId,
    pub params: serde_json::Map<String, serde_json::Value>,
}

/// A validated scenario with every polynomial, module and complex built.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub file: ScenarioFile,
    pub ring: Ring,
    pub ideal: Vec<Polynomial>,
    pub modules: BTreeMap<String, PresentedModule>,
    pub complexes: BTreeMap<String, FreeComplex>,
    pub exprs: BTreeMap<String, ComplexExpr>,
    pub checks: Vec<CheckSpec>,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, ScenarioError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self, ScenarioError> {
        Self::build(ScenarioFile::from_json(text)?, None)
    }

    /// Validates `file`, optionally replacing its characteristic.
    pub fn build(file: ScenarioFile, characteristic: Option<u32>) -> Result<Self, ScenarioError> {
        let p = characteristic.unwrap_or(file.ring.characteristic);
        let ring = Ring::with_char(&file.ring.vars, p).map_err(|e| invalid("ring", e))?;
        let poly = |field: String, text: &str| -> Result<Polynomial, ScenarioError> {
            parse_polynomial(text, &ring).map_err(|e| invalid(field, format!("`{text}`: {e}")))
        };

        let mut ideal = Vec::new();
        for (k, g) in file.ideal.iter().enumerate() {
            let f = poly(format!("ideal[{k}]"), g)?;
            if !f.is_homogeneous() {
                return Err(invalid(format!("ideal[{k}]"), format!("`{g}` is not homogeneous")));
            }
            ideal.push(f);
        }

        let mut modules = BTreeMap::new();
        modules.insert("A".to_string(), PresentedModule::ring_module(&ring));
        modules.insert("k".to_string(), PresentedModule::residue_field(&ring));
        for (name, m) in &file.modules {
            let field = format!("modules.{name}");
            let twists = if m.twists.is_empty() { vec![0; m.ambient_rank] } else { m.twists.clone() };
            if twists.len() != m.ambient_rank {
                return Err(invalid(field, "twists do not match ambient_rank"));
            }
            let mut rels = Vec::new();
            for (r, rel) in m.relations.iter().enumerate() {
                if rel.len() != m.ambient_rank {
                    return Err(invalid(format!("{field}.relations[{r}]"), "wrong number of components"));
                }
                let comps = rel
                    .iter()
                    .map(|t| poly(format!("{field}.relations[{r}]"), t))
                    .collect::<Result<Vec<_>, _>>()?;
                rels.push(ModVector::from_components(&ring, &comps).map_err(|e| invalid(&field, e))?);
            }
            let module = PresentedModule::new(&ring, FreeModuleSpec::new(twists), rels)
                .map_err(|e| invalid(&field, e))?;
            modules.insert(name.clone(), module);
        }

        let mut exprs = BTreeMap::new();
        let mut explicit = BTreeMap::new();
        for (name, c) in &file.complexes {
            let field = format!("complexes.{name}");
            match c {
                ComplexFile::Expr(text) => {
                    exprs.insert(name.clone(), parse_complex_expr(text).map_err(|e| invalid(field, e))?);
                }
                ComplexFile::Explicit(spec) => {
                    explicit.insert(name.clone(), build_explicit(&ring, spec, &field)?);
                }
            }
        }
        let mut builder = Builder { ring: &ring, modules: &modules, exprs: &exprs, done: explicit };
        for name in exprs.keys() {
            builder.named(name, &mut BTreeSet::new())?;
        }
        let complexes = builder.done;

        let mut checks = Vec::new();
        for (k, c) in file.checks.iter().enumerate() {
            let id = c.id.parse::<CheckId>().map_err(|e| invalid(format!("checks[{k}].id"), e))?;
            checks.push(CheckSpec { id, params: c.params.clone() });
        }
        if file.fit.window < 2 {
            return Err(invalid("fit.window", "must be at least 2"));
        }
        if file.fit.n_max == 0 {
            return Err(invalid("fit.n_max", "must be positive"));
        }
        Ok(Scenario { file, ring, ideal, modules, complexes, exprs, checks })
    }

    /// The same scenario over `F_p`.
    pub fn at_prime(&self, p: u32) -> Result<Self, ScenarioError> {
        Self::build(self.file.clone(), Some(p))
    }

    pub fn characteristic(&self) -> u32 {
        self.ring.field().characteristic()
    }

    pub fn variables(&self) -> Vec<Polynomial> {
        (0..self.ring.nvars()).map(|i| Polynomial::var(&self.ring, i)).collect()
    }

    pub fn module(&self, name: &str) -> Option<&PresentedModule> {
        self.modules.get(name)
    }

    pub fn complex(&self, name: &str) -> Option<&FreeComplex> {
        self.complexes.get(name)
    }

    pub fn polynomial(&self, text: &str) -> Result<Polynomial, ScenarioError> {
        parse_polynomial(text, &self.ring).map_err(|e| invalid("params", format!("`{text}`: {e}")))
    }
}

fn build_explicit(ring: &Ring, spec: &ExplicitComplex, field: &str) -> Result<FreeComplex, ScenarioError> {
    let terms: Vec<FreeModuleSpec> = spec.twists.iter().map(|t| FreeModuleSpec::new(t.clone())).collect();
    if spec.maps.len() + 1 != terms.len().max(1) {
        return Err(invalid(field, "need one matrix between each pair of consecutive terms"));
    }
    let mut diffs = Vec::new();
    for (k, rows) in spec.maps.iter().enumerate() {
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|t| parse_polynomial(t, ring).map_err(|e| invalid(format!("{field}.maps[{k}]"), format!("`{t}`: {e}"))))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let d = GradedMap::new(ring, terms[k].clone(), terms[k + 1].clone(), rows)
            .map_err(|e| invalid(format!("{field}.maps[{k}]"), e))?;
        diffs.push(d);
    }
    FreeComplex::new(ring, spec.lo, terms, diffs).map_err(|e| invalid(field, e))
}

struct Builder<'a> {
    ring: &'a Ring,
    modules: &'a BTreeMap<String, PresentedModule>,
    exprs: &'a BTreeMap<String, ComplexExpr>,
    done: BTreeMap<String, FreeComplex>,
}

impl Builder<'_> {
    fn named(&mut self, name: &str, visiting: &mut BTreeSet<String>) -> Result<FreeComplex, ScenarioError> {
        if let Some(x) = self.done.get(name) {
            return Ok(x.clone());
        }
        let field = format!("complexes.{name}");
        let Some(expr) = self.exprs.get(name) else {
            return Err(invalid(field, format!("unknown complex `{name}`")));
        };
        if !visiting.insert(name.to_string()) {
            return Err(invalid(field, "cyclic definition"));
        }
        let x = self.eval(expr, &field, visiting)?;
        visiting.remove(name);
        if !x.is_valid() {
            return Err(invalid(field, "differentials do not square to zero"));
        }
        self.done.insert(name.to_string(), x.clone());
        Ok(x)
    }

    fn polys(&self, texts: &[String], field: &str) -> Result<Vec<Polynomial>, ScenarioError> {
        texts
            .iter()
            .map(|t| parse_polynomial(t, self.ring).map_err(|e| invalid(field, format!("`{t}`: {e}"))))
            .collect()
    }

    fn eval(
        &mut self,
        e: &ComplexExpr,
        field: &str,
        visiting: &mut BTreeSet<String>,
    ) -> Result<FreeComplex, ScenarioError> {
        let ring = self.ring;
        Ok(match e {
            ComplexExpr::Koszul(args) => {
                let elems = if args.is_empty() {
                    (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect()
                } else {
                    self.polys(args, field)?
                };
                koszul_complex(ring, &elems).map_err(|e| invalid(field, e))?
            }
            ComplexExpr::Taylor(args) => {
                let mut mons = Vec::new();
                for p in self.polys(args, field)? {
                    if !p.is_monomial() {
                        return Err(invalid(field, format!("`{p}` is not a monomial")));
                    }
                    mons.push(p.leading_term().expect("nonzero").0);
                }
                taylor_complex(ring, &mons).map_err(|e| invalid(field, e))?
            }
            ComplexExpr::Resolution(l) => {
                let m = self.modules.get(l).ok_or_else(|| invalid(field, format!("unknown module `{l}`")))?;
                free_resolution(m, ring.nvars()).map_err(|e| invalid(field, e))?
            }
            ComplexExpr::Dual(x) => hom_dual(&self.eval(x, field, visiting)?),
            ComplexExpr::Shift(x, k) => shift(&self.eval(x, field, visiting)?, *k),
            ComplexExpr::Sum(xs) => {
                let mut acc = FreeComplex::zero(ring);
                for x in xs {
                    let y = self.eval(x, field, visiting)?;
                    acc = direct_sum(&acc, &y).map_err(|e| invalid(field, e))?;
                }
                acc
            }
            ComplexExpr::ConeMult(x, f) => {
                let x = self.eval(x, field, visiting)?;
                let f = self.polys(std::slice::from_ref(f), field)?.remove(0);
                cone(&mult_chain_map(&x, &f).map_err(|e| invalid(field, e))?)
            }
            ComplexExpr::Minimize(x) => minimize(&self.eval(x, field, visiting)?),
            ComplexExpr::Zero => FreeComplex::zero(ring),
            ComplexExpr::Ref(name) => self.named(name, visiting)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{
        "ring": {"vars": ["x", "y"], "char": 32003},
        "ideal": ["x", "y"],
        "modules": {"M": {"ambient_rank": 1, "relations": []}},
        "complexes": {"K": "koszul(x, y)"},
        "checks": [{"id": "THM-MAXDIM", "params": {"module": "M", "complex": "K"}}]
    }"#;

    #[test]
    fn minimal_scenario_loads() {
        let s = Scenario::parse(MINIMAL).unwrap();
        assert_eq!(s.checks.len(), 1);
        assert_eq!(s.complex("K").unwrap().ranks(), vec![(-2, 1), (-1, 2), (0, 1)]);
        assert_eq!(s.file.fit, FitFile::default());
        assert!(s.module("A").is_some() && s.module("k").is_some());
        assert_eq!(s.at_prime(31991).unwrap().characteristic(), 31991);
    }

    #[test]
    fn unknown_variable_is_named() {
        let text = MINIMAL.replace(r#""ideal": ["x", "y"]"#, r#""ideal": ["x", "w"]"#);
        let e = Scenario::parse(&text).unwrap_err();
        match e {
            ScenarioError::Validation { field, message } => {
                assert_eq!(field, "ideal[1]");
                assert!(message.contains("`w`"));
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let text = MINIMAL.replace(r#""ideal": ["x", "y"]"#, r#""ideal": ["x+1", "y"]"#);
        assert!(matches!(Scenario::parse(&text), Err(ScenarioError::Validation { .. })));
    }

    #[test]
    fn parse_errors_have_locations() {
        assert!(matches!(Scenario::parse("{\n  \"ring\": }"), Err(ScenarioError::Parse { line: 2, .. })));
    }

    #[test]
    fn references_resolve_and_cycles_fail() {
        let text = MINIMAL.replace(
            r#""complexes": {"K": "koszul(x, y)"}"#,
            r#""complexes": {"K": "koszul()", "C": "cone_mult(K, x)", "D": "dual(res(k))"}"#,
        );
        let s = Scenario::parse(&text).unwrap();
        assert_eq!(s.complex("C").unwrap().ranks().len(), 4);
        assert_eq!(s.complex("D").unwrap().lo(), 0);
        let cyclic = MINIMAL.replace(r#""complexes": {"K": "koszul(x, y)"}"#, r#""complexes": {"K": "dual(K)"}"#);
        assert!(Scenario::parse(&cyclic).is_err());
    }

    #[test]
    fn explicit_complexes() {
        let text = MINIMAL.replace(
            r#""complexes": {"K": "koszul(x, y)"}"#,
            r#""complexes": {"E": {"lo": -1, "twists": [[1], [0]], "maps": [[["x"]]]}, "C": "shift(E, 1)"}"#,
        );
        let s = Scenario::parse(&text).unwrap();
        assert_eq!(s.complex("E").unwrap().ranks(), vec![(-1, 1), (0, 1)]);
        assert_eq!(s.complex("C").unwrap().lo(), -2);
        let bad = text.replace(r#"[[["x"]]]"#, r#"[[["x^2"]]]"#);
        assert!(matches!(Scenario::parse(&bad), Err(ScenarioError::Validation { .. })));
    }

    #[test]
    fn round_trip() {
        let s = Scenario::parse(MINIMAL).unwrap();
        let again = ScenarioFile::from_json(&s.file.to_json()).unwrap();
        assert_eq!(again, s.file);
    }
}
