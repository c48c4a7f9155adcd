//! Command-line front end: JSON inputs, structured JSON outputs and SVG figures.

pub mod commands;
pub mod dto;
pub mod render;

use thiserror::Error;

pub use commands::{run, Cli};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {msg}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        msg: String,
    },

    #[error("{0}")]
    Input(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },

    #[error(transparent)]
    Library(#[from] troploc_core::Error),

    /// A check ran to completion and failed; the report has already been written.
    #[error("{0}")]
    Failed(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CliError {
    /// Process exit status: 1 input, 2 semantic or precondition, 3 internal.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Input(_) | CliError::Io { .. } => 1,
            CliError::Library(_) | CliError::Failed(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "parse",
            CliError::Input(_) => "input",
            CliError::Io { .. } => "io",
            CliError::Library(e) => e.code(),
            CliError::Failed(_) => "check_failed",
            CliError::Internal(_) => "internal",
        }
    }
}
