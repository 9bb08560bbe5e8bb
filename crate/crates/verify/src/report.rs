//! Report emission in JSON, CSV and plain text.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::checks::{CheckOutcome, Status};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format `{other}` (expected json, csv or text)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Meta {
    pub version: String,
    pub seed: u64,
    #[serde(rename = "char")]
    pub characteristic: u32,
}

impl Meta {
    pub fn new(seed: u64, characteristic: u32) -> Self {
        Meta { version: VERSION.to_string(), seed, characteristic }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub meta: Meta,
    pub outcomes: Vec<CheckOutcome>,
}

impl Report {
    pub fn new(meta: Meta, outcomes: Vec<CheckOutcome>) -> Self {
        Report { meta, outcomes }
    }

    /// Zeroes timings so identical runs give identical bytes.
    pub fn without_timings(mut self) -> Self {
        for o in &mut self.outcomes {
            o.millis = 0;
        }
        self
    }

    /// 0 when nothing failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.outcomes.iter().any(CheckOutcome::is_fail) {
            1
        } else {
            0
        }
    }

    pub fn emit(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => self.to_json().into_bytes(),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text().into_bytes(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record([
            "check", "status", "fit_status", "degree", "leading_diff", "stable_from", "predicted", "inputs", "samples",
            "reason", "millis",
        ])
        .expect("in-memory write");
        for o in &self.outcomes {
            let opt = |v: Option<String>| v.unwrap_or_default();
            let inputs: Vec<String> = o.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let samples: Vec<String> = o.samples.iter().map(u64::to_string).collect();
            w.write_record([
                o.check.as_str().to_string(),
                o.status.as_str().to_string(),
                opt(o.fitted.map(|f| f.status.to_string())),
                opt(o.fitted.and_then(|f| f.degree).map(|v| v.to_string())),
                opt(o.fitted.and_then(|f| f.leading_diff).map(|v| v.to_string())),
                opt(o.fitted.and_then(|f| f.stable_from).map(|v| v.to_string())),
                opt(o.predicted.map(|v| v.to_string())),
                inputs.join(";"),
                samples.join(" "),
                opt(o.reason.clone()),
                o.millis.to_string(),
            ])
            .expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hilbtor {} (char {}, seed {})", self.meta.version, self.meta.characteristic, self.meta.seed);
        let _ = writeln!(out, "{:<15} {:<8} {:>6} {:>9} {:>8}  reason", "check", "status", "degree", "predicted", "ms");
        for o in &self.outcomes {
            let dash = || "-".to_string();
            let _ = writeln!(
                out,
                "{:<15} {:<8} {:>6} {:>9} {:>8}  {}",
                o.check.as_str(),
                o.status.as_str(),
                o.degree().map_or_else(dash, |d| d.to_string()),
                o.predicted.map_or_else(dash, |d| d.to_string()),
                o.millis,
                o.reason.as_deref().unwrap_or("")
            );
            if o.status == Status::Fail && !o.samples.is_empty() {
                let _ = writeln!(out, "{:<15} samples {:?}", "", o.samples);
            }
        }
        let count = |s: Status| self.outcomes.iter().filter(|o| o.status == s).count();
        let _ = writeln!(
            out,
            "{} pass, {} fail, {} skipped",
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        );
        out
    }
}
