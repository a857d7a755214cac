use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, values or config entries.
    #[error("{0}")]
    Usage(String),
    /// A computation failed or did not meet its tolerance.
    #[error("{0}")]
    Numerical(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Numerical(_) => 2,
        }
    }
}

impl From<casimir_entropy::Error> for CliError {
    fn from(e: casimir_entropy::Error) -> Self {
        use casimir_entropy::Error as E;
        match e {
            E::Domain(_) | E::Config(_) => CliError::Usage(e.to_string()),
            E::Truncation { .. } | E::NonFinite { .. } => CliError::Numerical(e.to_string()),
        }
    }
}
