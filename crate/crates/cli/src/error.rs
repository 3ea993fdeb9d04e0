use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("{0}")]
    Model(#[from] mmw_core::Error),
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    /// Some sweep cells had no feasible solution; the rest were written.
    #[error("{0}")]
    InfeasibleCells(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Model(mmw_core::Error::Infeasible { .. } | mmw_core::Error::InfeasibleRate { .. }) => 3,
            CliError::InfeasibleCells(_) => 3,
            CliError::Model(_) => 4,
            CliError::Io { .. } => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
