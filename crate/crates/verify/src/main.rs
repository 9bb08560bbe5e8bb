use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hilbtor::checks::RunOptions;
use hilbtor::corpus::{generate_corpus_with, write_corpus, CorpusOptions};
use hilbtor::report::{Format, Meta, Report};
use hilbtor::scenario::{Scenario, ScenarioError};
use hilbtor::{run_checks, CheckOutcome};
use hilbtor_core::degfit::{
    fit_adaptive, predict_degree, sample_psi, DegreeReport, FitConfig, SampleOptions, Target,
};
use hilbtor_core::exec::Execution;

#[derive(Parser)]
#[command(name = "hilbtor", version, about = "Degrees of Tor/Ext length functions over polynomial rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Initial sampling range 1..=N (doubled up to the cap until the fit locks).
    #[arg(long)]
    nmax: Option<u32>,
    /// Number of trailing samples the fit must hold on.
    #[arg(long)]
    window: Option<usize>,
    /// Seed for random elements (cone maps).
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Zero all timings for byte-identical reports.
    #[arg(long)]
    deterministic: bool,
    /// Refit every stabilized fit on twice as many samples.
    #[arg(long)]
    confirm: bool,
    /// Per-check time budget in seconds.
    #[arg(long, default_value_t = 120)]
    budget: u64,
    /// Evaluate samples on one thread.
    #[arg(long)]
    sequential: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks listed in a scenario file.
    Verify {
        #[arg(long)]
        scenario: PathBuf,
        /// Override the characteristic of the coefficient field.
        #[arg(long = "char")]
        characteristic: Option<u32>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Run the built-in corpus.
    Demo {
        /// Random scenarios on top of the fixed cases.
        #[arg(long, default_value_t = 6)]
        random: usize,
        #[arg(long)]
        dense_ideals: bool,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Fit one complex against one module and print a degree report.
    Fit {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long)]
        complex: String,
        /// Defaults to `M` when the scenario defines it, else `A`.
        #[arg(long)]
        module: Option<String>,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long)]
        window: Option<usize>,
    },
    /// Write the corpus as scenario files.
    Corpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 6)]
        random: usize,
        #[arg(long)]
        dense_ideals: bool,
    },
}

fn parse_format(s: &str) -> Result<Format, String> {
    s.parse()
}

/// Errors that map to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error(transparent)]
struct UsageError(#[from] ScenarioError);

fn options(run: &RunArgs, s: &Scenario) -> RunOptions {
    let base = RunOptions::for_scenario(s);
    RunOptions {
        n_max: run.nmax.unwrap_or(base.n_max),
        window: run.window.unwrap_or(base.window),
        budget: Duration::from_secs(run.budget),
        exec: if run.sequential { Execution::Sequential } else { Execution::default() },
        confirm: run.confirm,
        seed: run.seed,
        ..base
    }
}

fn emit(run: &RunArgs, report: Report) -> Result<i32> {
    let report = if run.deterministic { report.without_timings() } else { report };
    let bytes = report.emit(run.format);
    match &run.out {
        Some(path) => std::fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?,
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
        }
    }
    Ok(report.exit_code())
}

fn load(path: &Path, characteristic: Option<u32>) -> Result<Scenario> {
    let s = Scenario::load(path).map_err(UsageError)?;
    Ok(match characteristic {
        Some(p) => s.at_prime(p).map_err(UsageError)?,
        None => s,
    })
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify { scenario, characteristic, run } => {
            let s = load(&scenario, characteristic)?;
            if run.window.is_some_and(|w| w < 2) {
                bail!(UsageError(ScenarioError::Validation { field: "--window".into(), message: "must be at least 2".into() }));
            }
            let outcomes = run_checks(&s, &options(&run, &s));
            emit(&run, Report::new(Meta::new(run.seed, s.characteristic()), outcomes))
        }
        Command::Demo { random, dense_ideals, run } => {
            let corpus = generate_corpus_with(run.seed, CorpusOptions { random, dense_ideals });
            let mut outcomes: Vec<CheckOutcome> = Vec::new();
            let mut characteristic = hilbtor::scenario::DEFAULT_CHAR;
            for entry in corpus {
                let s = Scenario::build(entry.file, None).map_err(UsageError)?;
                characteristic = s.characteristic();
                for mut o in run_checks(&s, &options(&run, &s)) {
                    o.inputs.insert("scenario".into(), entry.name.clone());
                    outcomes.push(o);
                }
            }
            emit(&run, Report::new(Meta::new(run.seed, characteristic), outcomes))
        }
        Command::Fit { scenario, complex, module, nmax, window } => {
            let s = load(&scenario, None)?;
            let x = s.complex(&complex).with_context(|| format!("unknown complex `{complex}`"))?;
            let mname = module.unwrap_or_else(|| if s.module("M").is_some() { "M".into() } else { "A".into() });
            let m = s.module(&mname).with_context(|| format!("unknown module `{mname}`"))?;
            let cfg = FitConfig {
                n_max: nmax.unwrap_or(s.file.fit.n_max),
                window: window.unwrap_or(s.file.fit.window),
                ..FitConfig::default()
            };
            let opts = SampleOptions::default();
            let (samples, fitted) =
                fit_adaptive(&cfg, |ns| sample_psi(x, m, &s.ideal, ns, opts).map(|v| v.values))?;
            let mut out = serde_json::Map::new();
            out.insert("complex".into(), complex.into());
            out.insert("module".into(), mname.into());
            out.insert("samples".into(), samples.values.clone().into());
            out.insert("fitted".into(), serde_json::to_value(hilbtor::checks::FitSummary::from(&fitted))?);
            match predict_degree(Target::Complex(x), m, &s.ideal) {
                Ok(p) => {
                    let r = DegreeReport::new(fitted, p);
                    out.insert("dim_m".into(), r.dim_m.into());
                    out.insert("dim_h".into(), r.dim_h.into());
                    out.insert("analytic_spread".into(), r.analytic_spread.into());
                    out.insert("predicted".into(), r.predicted.into());
                    out.insert("verdict".into(), r.verdict.into());
                }
                Err(e) => {
                    out.insert("predicted".into(), serde_json::Value::Null);
                    out.insert("note".into(), e.to_string().into());
                }
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(0)
        }
        Command::Corpus { seed, out, random, dense_ideals } => {
            let corpus = generate_corpus_with(seed, CorpusOptions { random, dense_ideals });
            write_corpus(&out, &corpus).with_context(|| format!("writing corpus to {}", out.display()))?;
            eprintln!("wrote {} scenarios to {}", corpus.len(), out.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<UsageError>() { 2 } else { 1 })
        }
    }
}
