//! Command-line runner for the remote-operation simulator: argument parsing,
//! scenario execution with self-checks, and JSON/CSV report output.

pub mod config;
pub mod params;
pub mod report;
pub mod run;

pub use config::{Cli, CommandConfig, Format, ProtocolConfig, RunConfig};
pub use report::{Check, Report, Results, REPORT_VERSION};
pub use run::{execute, run};

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameter: {0}")]
    Invalid(String),
    #[error(transparent)]
    Core(#[from] locc_core::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) | CliError::Core(_) => EXIT_INVALID,
            CliError::Io(_) | CliError::Json(_) => EXIT_IO,
        }
    }
}
