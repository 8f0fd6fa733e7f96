use thiserror::Error;

use tropcount::CountError;

/// Everything that ends a command early, mapped onto process exit codes.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid problem: {0}")]
    Validation(String),
    #[error("{0}")]
    NotGeneric(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::Validation(_) => 3,
            CliError::NotGeneric(_) => 4,
            CliError::Internal(_) => 6,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

/// A check command ran to completion but the property failed.
pub const CHECK_FAILED: i32 = 5;

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Problem(p) => CliError::Validation(p.to_string()),
            e @ CountError::PointCount { .. } => CliError::Validation(e.to_string()),
            e @ CountError::NotGeneric { .. } => CliError::NotGeneric(e.to_string()),
            CountError::Inconsistent(m) => CliError::Internal(m),
        }
    }
}
