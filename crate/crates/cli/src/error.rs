use clusterlab_core::Error;
use thiserror::Error;

/// Usage errors exit with 2, kernel errors with 1 (index errors count as usage).
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(#[from] Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(Error::IndexOutOfRange { .. }) => 2,
            CliError::Domain(_) | CliError::Failed(_) => 1,
        }
    }

    pub fn usage(flag: &str, msg: impl std::fmt::Display) -> Self {
        CliError::Usage(format!("{flag}: {msg}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
