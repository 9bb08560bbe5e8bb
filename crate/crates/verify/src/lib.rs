//! Scenario files, the theorem and property check suite, corpus generation
//! and reports for the `hilbtor` command.

pub mod checks;
pub mod corpus;
pub mod expr;
pub mod report;
pub mod scenario;

pub use checks::{run_check, run_checks, CheckId, CheckOutcome, RunOptions, Status};
pub use corpus::{generate_corpus, generate_corpus_with, CorpusEntry, CorpusOptions};
pub use report::{Format, Meta, Report};
pub use scenario::{Scenario, ScenarioError, ScenarioFile};
