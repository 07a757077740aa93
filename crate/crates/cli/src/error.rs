use std::io;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Numeric(#[from] fracwave::Error),

    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
}

impl CliError {
    /// Process exit status: 1 usage, 2 domain, 3 numerical failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Numeric(e) if e.is_domain() => 2,
            CliError::Numeric(_) => 3,
        }
    }
}
