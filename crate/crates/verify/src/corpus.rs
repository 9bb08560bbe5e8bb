//! Deterministic scenario corpus: fixed acceptance cases plus seeded random ones.

use std::collections::BTreeMap;
use std::path::Path;

use hilbtor_core::groebner::Ideal;
use hilbtor_core::homalg::{in_kbf, is_zero_object};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::scenario::{CheckFile, ComplexFile, FitFile, ModuleFile, RingFile, Scenario, ScenarioFile, DEFAULT_CHAR};

const VARS: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub name: String,
    pub file: ScenarioFile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusOptions {
    /// Random scenarios on top of the fixed ones.
    pub random: usize,
    /// Allow dense homogeneous ideal generators instead of monomials and binomials.
    pub dense_ideals: bool,
}

impl Default for CorpusOptions {
    fn default() -> Self {
        CorpusOptions { random: 6, dense_ideals: false }
    }
}

fn ring(d: usize) -> RingFile {
    RingFile { vars: VARS[..d].iter().map(|v| v.to_string()).collect(), characteristic: DEFAULT_CHAR }
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn check(id: &str, params: Value) -> CheckFile {
    let params = match params {
        Value::Object(m) => m,
        _ => Map::new(),
    };
    CheckFile { id: id.to_string(), params }
}

fn scenario(d: usize, ideal: &[&str]) -> ScenarioFile {
    ScenarioFile {
        ring: ring(d),
        ideal: strings(ideal),
        modules: BTreeMap::new(),
        complexes: BTreeMap::new(),
        checks: Vec::new(),
        fit: FitFile::default(),
    }
}

/// `(x^2, y^3, z^2)` truncated to `d` variables.
fn power_ideal(d: usize) -> Vec<&'static str> {
    ["x^2", "y^3", "z^2"][..d].to_vec()
}

fn maximal(d: usize) -> Vec<&'static str> {
    VARS[..d].to_vec()
}

/// The twelve THM-MAXDIM cases: `(d, ideal, relations of M)`.
fn maxdim_table() -> Vec<(usize, Vec<&'static str>, Vec<&'static str>)> {
    vec![
        (1, maximal(1), vec![]),
        (1, power_ideal(1), vec![]),
        (2, maximal(2), vec![]),
        (2, maximal(2), vec!["x"]),
        (2, power_ideal(2), vec![]),
        (2, power_ideal(2), vec!["x*y"]),
        (2, power_ideal(2), vec!["x^2-y^2"]),
        (3, maximal(3), vec![]),
        (3, maximal(3), vec!["x*y"]),
        (3, power_ideal(3), vec![]),
        (3, power_ideal(3), vec!["x^2-y*z"]),
        (3, power_ideal(3), vec!["z"]),
    ]
}

/// Fixed THM-MAXDIM scenarios, one Koszul complex each.
pub fn maxdim_cases() -> Vec<CorpusEntry> {
    maxdim_table()
        .into_iter()
        .enumerate()
        .map(|(k, (d, ideal, rels))| {
            let mut f = scenario(d, &ideal);
            f.modules.insert("M".into(), ModuleFile::cyclic(&rels));
            f.complexes.insert("K".into(), ComplexFile::from("koszul()"));
            f.checks.push(check("THM-MAXDIM", json!({"module": "M", "complex": "K"})));
            CorpusEntry { name: format!("maxdim-{:02}", k + 1), file: f }
        })
        .collect()
}

/// `(d, ideal, relations of M, finite-length Q)`.
type MainRow = (usize, Vec<&'static str>, Vec<&'static str>, Vec<&'static str>);

/// Fixed THM-MAIN pairs.
fn main_table() -> Vec<MainRow> {
    vec![
        (1, power_ideal(1), vec![], vec!["x^3"]),
        (2, maximal(2), vec![], vec!["x^2", "y"]),
        (2, power_ideal(2), vec!["x*y"], vec!["x", "y^2"]),
        (3, maximal(3), vec![], vec!["x", "y", "z^2"]),
        (3, power_ideal(3), vec!["x"], vec!["x^2", "x*y", "y^2", "z"]),
        (3, maximal(3), vec!["x*y"], vec!["x", "y^2", "z^2"]),
    ]
}

/// Fixed THM-MAIN scenarios with five structurally different complexes each.
pub fn main_cases() -> Vec<CorpusEntry> {
    main_table()
        .into_iter()
        .enumerate()
        .map(|(k, (d, ideal, rels, q))| {
            let mut f = scenario(d, &ideal);
            f.modules.insert("M".into(), ModuleFile::cyclic(&rels));
            f.modules.insert("Q".into(), ModuleFile::cyclic(&q));
            for (name, expr) in [
                ("koszul", "koszul()"),
                ("res", "res(Q)"),
                ("dual", "dual(res(Q))"),
                ("shift", "shift(koszul(), 3)"),
                ("cone", "cone_mult(res(k), x)"),
            ] {
                f.complexes.insert(name.into(), ComplexFile::from(expr));
            }
            f.checks.push(check("THM-MAIN", json!({"module": "M"})));
            CorpusEntry { name: format!("main-{:02}", k + 1), file: f }
        })
        .collect()
}

fn monomial(exps: &[u32]) -> String {
    let parts: Vec<String> = exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| if e == 1 { VARS[i].to_string() } else { format!("{}^{e}", VARS[i]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn random_exponents(rng: &mut ChaCha8Rng, d: usize, degree: u32) -> Vec<u32> {
    let mut e = vec![0; d];
    for _ in 0..degree {
        e[rng.gen_range(0..d)] += 1;
    }
    e
}

fn random_monomial(rng: &mut ChaCha8Rng, d: usize, degree: u32) -> String {
    monomial(&random_exponents(rng, d, degree))
}

/// `m1 - m2` or `m1 + c*m2` with distinct monomials of one degree.
fn random_binomial(rng: &mut ChaCha8Rng, d: usize, degree: u32) -> Option<String> {
    let a = random_exponents(rng, d, degree);
    let b = random_exponents(rng, d, degree);
    if a == b {
        return None;
    }
    let c = rng.gen_range(1..=5);
    Some(if c == 1 { format!("{}-{}", monomial(&a), monomial(&b)) } else { format!("{}+{c}*{}", monomial(&a), monomial(&b)) })
}

fn random_dense(rng: &mut ChaCha8Rng, d: usize, degree: u32) -> String {
    let mut terms = vec![monomial(&random_exponents(rng, d, degree))];
    for _ in 0..3 {
        terms.push(format!("{}*{}", rng.gen_range(1..=50), random_monomial(rng, d, degree)));
    }
    terms.join("+")
}

fn random_ideal(rng: &mut ChaCha8Rng, d: usize, dense: bool) -> Vec<String> {
    let mut gens: Vec<String> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = rng.gen_range(1..=3);
            monomial(&e)
        })
        .collect();
    if d >= 2 && rng.gen_bool(0.6) {
        let degree = rng.gen_range(2..=3);
        let extra = if dense {
            Some(random_dense(rng, d, degree))
        } else if rng.gen_bool(0.5) {
            random_binomial(rng, d, degree)
        } else {
            Some(random_monomial(rng, d, degree))
        };
        gens.extend(extra);
    }
    if dense {
        // perturb the pure powers so they are no longer monomials
        for g in gens.iter_mut().take(d) {
            let deg = g.chars().last().and_then(|c| c.to_digit(10)).filter(|_| g.contains('^')).unwrap_or(1);
            if deg >= 2 {
                *g = format!("{g}+{}*{}", rng.gen_range(1..=50), random_monomial(rng, d, deg));
            }
        }
    }
    gens
}

/// `A`, `A/(f)` or `A/(monomials)` of positive dimension.
fn random_module(rng: &mut ChaCha8Rng, d: usize) -> ModuleFile {
    if d == 1 {
        return ModuleFile::cyclic(&[]);
    }
    match rng.gen_range(0..3) {
        0 => ModuleFile::cyclic(&[]),
        1 => {
            let degree = rng.gen_range(1..=2);
            let f = random_binomial(rng, d, degree).unwrap_or_else(|| random_monomial(rng, d, degree));
            ModuleFile { ambient_rank: 1, twists: Vec::new(), relations: vec![vec![f]] }
        }
        _ => {
            // monomials all divisible by x keep y free, so dim > 0
            let rels = (0..rng.gen_range(1..=2))
                .map(|_| {
                    let extra = rng.gen_range(0..=1);
                    let mut e = random_exponents(rng, d, extra);
                    e[0] += 1;
                    vec![monomial(&e)]
                })
                .collect();
            ModuleFile { ambient_rank: 1, twists: Vec::new(), relations: rels }
        }
    }
}

/// `A/(x_1^{a_1}, ..., x_d^{a_d}, extra)`, of finite length.
fn random_finite_quotient(rng: &mut ChaCha8Rng, d: usize) -> ModuleFile {
    let mut rels: Vec<Vec<String>> = (0..d)
        .map(|i| {
            let mut e = vec![0; d];
            e[i] = rng.gen_range(1..=2);
            vec![monomial(&e)]
        })
        .collect();
    if d >= 2 && rng.gen_bool(0.5) {
        rels.push(vec![random_monomial(rng, d, 2)]);
    }
    ModuleFile { ambient_rank: 1, twists: Vec::new(), relations: rels }
}

fn random_scenario(rng: &mut ChaCha8Rng, dense: bool) -> Option<ScenarioFile> {
    let d = rng.gen_range(1..=3);
    let ideal = random_ideal(rng, d, dense);
    let mut f = ScenarioFile { ideal, ..scenario(d, &[]) };
    f.modules.insert("M".into(), random_module(rng, d));
    f.modules.insert("Q".into(), random_finite_quotient(rng, d));
    let base = Scenario::build(f.clone(), None).ok()?;
    if !Ideal::new(&base.ring, base.ideal.clone()).ok()?.is_m_primary() {
        return None;
    }
    // Koszul on a subset of the generators that is a system of parameters
    let pure: Vec<String> = f.ideal[..d].to_vec();
    let mut candidates: Vec<(String, String)> = vec![
        ("K".into(), "koszul()".into()),
        ("P".into(), format!("koszul({})", pure.join(", "))),
        ("R".into(), "res(Q)".into()),
        ("D".into(), "dual(res(Q))".into()),
        ("S".into(), format!("shift(res(Q), {})", rng.gen_range(-2..=2))),
        ("T".into(), "sum(koszul(), res(Q))".into()),
    ];
    let f_var = VARS[rng.gen_range(0..d)];
    candidates.push(("C".into(), format!("cone_mult(res(Q), {f_var})")));
    candidates.shuffle(rng);
    candidates.truncate(4);
    candidates.sort();
    for (name, expr) in candidates {
        let mut trial = f.clone();
        trial.complexes.insert(name.clone(), ComplexFile::Expr(expr.clone()));
        let Ok(s) = Scenario::build(trial, None) else { continue };
        let x = s.complex(&name)?;
        if x.is_valid() && in_kbf(x).ok()? && !is_zero_object(x).ok()? {
            f.complexes.insert(name, ComplexFile::Expr(expr));
        }
    }
    if f.complexes.is_empty() {
        return None;
    }
    let names: Vec<String> = f.complexes.keys().cloned().collect();
    let first = names[0].clone();
    if names.len() >= 2 {
        f.checks.push(check("THM-MAIN", json!({"module": "M", "complexes": names})));
    }
    for name in &names {
        f.checks.push(check("THM-MPRIM", json!({"module": "M", "complex": name})));
        f.checks.push(check("BOUND-26", json!({"module": "M", "complex": name})));
    }
    f.checks.push(check("THM-MAXDIM", json!({"module": "M", "complex": first})));
    f.checks.push(check("COR-CMMAX", json!({"module": "M", "L": ["k", "Q"]})));
    f.checks.push(check("COR-REGCOR", json!({"module": "M", "L": ["k", "Q"]})));
    f.checks.push(check("LEM-PROJSUPP", json!({"module": "M", "L": ["k", "Q", "A"]})));
    f.checks.push(check("PROP-WTF", json!({"module": "M", "complex": first})));
    f.checks.push(check("PROP-SUBADD", json!({"module": "M", "complex": first})));
    f.checks.push(check("PROP-SUBADD2", json!({"module": "M", "complex": first})));
    f.checks.push(check("PROP-NONVANISH", json!({"module": "M", "complex": first})));
    f.checks.push(check("KOSZUL-TOP", json!({"module": "M"})));
    if d >= 2 {
        f.checks.push(check("CONE-DROP", json!({"module": "A"})));
    }
    Some(f)
}

/// The fixed cases followed by `opts.random` seeded random scenarios.
pub fn generate_corpus_with(seed: u64, opts: CorpusOptions) -> Vec<CorpusEntry> {
    let mut out = maxdim_cases();
    out.extend(main_cases());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut k = 0;
    let mut attempts = 0;
    while k < opts.random && attempts < 50 * opts.random.max(1) {
        attempts += 1;
        if let Some(f) = random_scenario(&mut rng, opts.dense_ideals) {
            k += 1;
            out.push(CorpusEntry { name: format!("random-{seed}-{k:02}"), file: f });
        }
    }
    out
}

pub fn generate_corpus(seed: u64) -> Vec<CorpusEntry> {
    generate_corpus_with(seed, CorpusOptions::default())
}

/// Writes each entry to `<dir>/<name>.json`.
pub fn write_corpus(dir: &Path, entries: &[CorpusEntry]) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for e in entries {
        std::fs::write(dir.join(format!("{}.json", e.name)), e.file.to_json())?;
    }
    Ok(())
}
