use std::path::PathBuf;

use thiserror::Error;

use crate::syntax::SyntaxError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error(transparent)]
    Core(#[from] hyperchar_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    /// 1 when the theory predicts the request cannot succeed, 2 for bad input.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(hyperchar_core::Error::NoCounterexample { .. }) => 1,
            _ => 2,
        }
    }
}
