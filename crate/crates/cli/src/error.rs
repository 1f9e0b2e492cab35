use std::path::{Path, PathBuf};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {msg}")]
    Input { path: PathBuf, msg: String },

    #[error(transparent)]
    Compute(#[from] zerodist::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("verification failed: {0} mismatching file(s)")]
    Mismatch(usize),
}

impl CliError {
    /// 2 for usage and input errors, 1 for failed computations.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Input { .. } => 2,
            CliError::Compute(_) | CliError::Io { .. } | CliError::Mismatch(_) => 1,
        }
    }

    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io { path: path.to_path_buf(), source }
    }

    pub fn input(path: &Path, msg: impl ToString) -> Self {
        CliError::Input { path: path.to_path_buf(), msg: msg.to_string() }
    }
}

/// Bad generator parameters are the caller's fault; anything else is a
/// failed computation.
pub fn param_error(e: zerodist::Error) -> CliError {
    match e {
        zerodist::Error::InvalidArgument(_) | zerodist::Error::OutOfRange(_) | zerodist::Error::TooLarge(_) => {
            CliError::Usage(e.to_string())
        }
        other => CliError::Compute(other),
    }
}
