//! Config ingestion, pipeline orchestration and deterministic JSON reports
//! for the `thetaloc` command.

pub mod config;
pub mod report;
pub mod run;

pub use config::{parse_config, RunConfig, TaskMode};
pub use report::RunReport;
pub use run::{coefficient_setup, run, RunOptions, RunOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("config error at {path}: {message}")]
    Config { path: String, message: String },
    #[error("{module}: {message}")]
    Arithmetic { module: &'static str, message: String },
}

impl CliError {
    /// 2 for unreadable or invalid configs, 3 for arithmetic preconditions.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Config { .. } => 2,
            CliError::Arithmetic { .. } => 3,
        }
    }
}
