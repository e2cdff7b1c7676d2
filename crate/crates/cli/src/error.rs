use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] smarandache_core::Error),

    #[error("{0}")]
    Verification(String),

    #[error("cannot write {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    /// Some items of a batch failed; each was reported as it happened.
    #[error("{failed} of {total} items failed")]
    Partial { failed: usize, total: usize, code: i32 },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io { .. } => 2,
            CliError::Core(e) if e.is_input_error() => 2,
            CliError::Core(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Partial { code, .. } => *code,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "InputError",
            CliError::Core(e) => e.name(),
            CliError::Verification(_) => "VerificationFailed",
            CliError::Io { .. } => "IoError",
            CliError::Partial { .. } => "PartialFailure",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
