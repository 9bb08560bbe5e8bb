//! The `hilbtor` binary end to end.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hilbtor"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios").join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn hilbtor")
}

fn verify(name: &str, extra: &[&str]) -> Output {
    let path = scenario(name);
    let mut args = vec!["verify", "--scenario", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

#[test]
fn passing_scenario_exits_zero_with_json_report() {
    let out = verify("plane.json", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["meta"]["char"], 32003);
    let outcomes = report["outcomes"].as_array().unwrap();
    assert_eq!(outcomes.len(), 7);
    assert!(outcomes.iter().all(|o| o["status"] == "pass"));
    let first = &outcomes[0];
    assert_eq!(first["check"], "THM-MAXDIM");
    assert_eq!(first["fitted"]["degree"], 1);
    assert_eq!(first["predicted"], 1);
    // key order is part of the contract; look at the raw bytes
    let raw = String::from_utf8(out.stdout).unwrap();
    let at = |k: &str| raw.find(&format!("\"{k}\"")).unwrap();
    assert!(at("meta") < at("outcomes"));
    assert!(at("check") < at("inputs") && at("inputs") < at("fitted") && at("fitted") < at("predicted"));
    assert!(at("predicted") < at("samples") && at("samples") < at("millis"));
}

#[test]
fn exhausted_budget_exits_one() {
    let out = verify("plane.json", &["--budget", "0", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("check,status,"));
    assert!(text.lines().skip(1).any(|l| l.starts_with("THM-MAXDIM,fail,")));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    assert_eq!(run(&["verify"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--scenario", "/nonexistent/scenario.json"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"ring\": {\"vars\": [\"x\"]},\n \"ideal\": [\"x +\"]}\n").unwrap();
    let out = run(&["verify", "--scenario", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(verify("plane.json", &["--format", "yaml"]).status.code(), Some(2));
    assert_eq!(verify("plane.json", &["--window", "1"]).status.code(), Some(2));
}

#[test]
fn text_format_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.txt");
    let out = verify("three_vars.json", &["--format", "text", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("COR-CMMAX"));
    assert!(text.contains("2 pass, 0 fail, 0 skipped"));
}

#[test]
fn deterministic_reports_are_byte_identical() {
    let args = ["--deterministic", "--seed", "5"];
    let a = verify("homology_term.json", &args);
    let b = verify("homology_term.json", &args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let seq = verify("homology_term.json", &["--deterministic", "--seed", "5", "--sequential"]);
    assert_eq!(a.stdout, seq.stdout);
}

#[test]
fn characteristic_override() {
    let out = verify("three_vars.json", &["--char", "31991"]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["meta"]["char"], 31991);
}

#[test]
fn corpus_files_are_reproducible_and_loadable() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        let out = run(&["corpus", "--seed", "3", "--out", d.path().to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert_eq!(names.len(), 24);
    for name in &names {
        let x = std::fs::read(a.path().join(name)).unwrap();
        assert_eq!(x, std::fs::read(b.path().join(name)).unwrap());
    }
    let first = a.path().join(&names[0]);
    let out = run(&["verify", "--scenario", first.to_str().unwrap(), "--deterministic"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn fit_prints_a_degree_report() {
    let path = scenario("homology_term.json");
    let out = run(&["fit", "--scenario", path.to_str().unwrap(), "--complex", "kx"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["module"], "M");
    assert_eq!(v["fitted"]["degree"], 2);
    assert_eq!(v["predicted"], 2);
    assert_eq!(v["dim_h"], 2);
    assert!(v["samples"].as_array().unwrap().len() >= 8);
    let missing = run(&["fit", "--scenario", path.to_str().unwrap(), "--complex", "nope"]);
    assert_eq!(missing.status.code(), Some(1));
}
