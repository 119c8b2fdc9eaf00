//! Process exit codes.

use std::fmt;

use zerosum::Error;

/// Exit status of a command. Larger codes win when statuses are combined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok = 0,
    /// I/O failure or internal error.
    Internal = 1,
    /// Command-line parse failure.
    Usage = 2,
    InvalidInput = 3,
    /// A search hit its budget; only bounds are known.
    ResourceLimit = 4,
    /// Identity mismatch, lemma violation or theorem violation.
    Violation = 5,
}

impl Status {
    pub fn code(self) -> i32 {
        self as i32
    }

    pub fn worst(self, other: Status) -> Status {
        self.max(other)
    }
}

/// Errors surfaced by the command layer.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("cache: {0}")]
    Cache(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn io(path: impl fmt::Display, source: std::io::Error) -> CliError {
        CliError::Io { path: path.to_string(), source }
    }

    pub fn status(&self) -> Status {
        match self {
            CliError::Core(e) => match e {
                Error::InvalidInput(_) | Error::PreconditionViolation(_) => Status::InvalidInput,
                Error::ResourceLimit { .. } => Status::ResourceLimit,
                Error::TheoremViolation(_) => Status::Violation,
                Error::DependencyMissing(_) => Status::Internal,
            },
            CliError::Usage(_) => Status::Usage,
            CliError::Io { .. } | CliError::Cache(_) | CliError::Csv(_) | CliError::Json(_) => Status::Internal,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
