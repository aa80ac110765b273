//! Experiments and file formats on top of `opkit-core`.
//!
//! * [`opspec`] parses the small operator expression language used by the
//!   `dottest` subcommand.
//! * [`bench`] times forward products of structured operators against their
//!   dense matrices and writes CSV.
//! * [`interp`] runs the irregular-sampling interpolation experiment and
//!   writes `signals.csv` and `report.json`.

pub mod bench;
pub mod demo;
pub mod interp;
pub mod opspec;

use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("invalid operator expression at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error(transparent)]
    Operator(#[from] opkit_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code: every error is a usage or configuration failure.
    pub fn exit_code(&self) -> i32 {
        2
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
