use std::path::PathBuf;

use thiserror::Error;

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] parastat_core::Error),

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{}: {source}", path.display())]
    Csv { path: PathBuf, source: csv::Error },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// 1 invariant failure, 2 argument or parameter error, 3 sizing error.
    pub fn exit_code(&self) -> u8 {
        use parastat_core::Error as E;
        match self {
            CliError::Core(E::Sizing { .. }) => 3,
            CliError::Core(E::Structure(_)) => 1,
            CliError::Usage(_) | CliError::Core(_) | CliError::Io { .. } | CliError::Csv { .. } => 2,
        }
    }
}
