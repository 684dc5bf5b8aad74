use std::path::PathBuf;

use thiserror::Error;

/// Failures of the command-line front end, grouped by exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("{path}: {message}")]
    Parse { path: String, message: String },

    /// Well-formed input that violates a documented constraint.
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("{context}: {source}")]
    Validation {
        context: String,
        #[source]
        source: qcoherence::Error,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Validation {
                source: qcoherence::Error::InvalidArguments(_),
                ..
            } => 2,
            _ => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn validation(context: impl Into<String>, source: qcoherence::Error) -> Self {
        CliError::Validation {
            context: context.into(),
            source,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
