use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const OTHER: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const IO: u8 = 3;
    pub const SCHEMA: u8 = 4;
    pub const DEGENERATE: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] reaction_lens::Error),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error("invalid synthesis spec: {0}")]
    InvalidSpec(String),

    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn io(path: impl AsRef<Path>) -> impl FnOnce(io::Error) -> CliError {
        let path = path.as_ref().to_path_buf();
        move |source| CliError::Io { path, source }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_degenerate_data() => exit::DEGENERATE,
            CliError::Core(e) if e.is_schema() => exit::SCHEMA,
            CliError::Core(reaction_lens::Error::UnreadableSource(_) | reaction_lens::Error::Io(_)) => exit::IO,
            CliError::Core(reaction_lens::Error::InvalidConfig(_) | reaction_lens::Error::NonPositiveSigma(_)) => {
                exit::USAGE
            }
            CliError::Core(_) => exit::OTHER,
            CliError::Io { .. } => exit::IO,
            CliError::Usage(_) | CliError::InvalidSpec(_) => exit::USAGE,
            CliError::Other(_) => exit::OTHER,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Other(e.to_string())
    }
}
