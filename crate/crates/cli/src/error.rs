use thiserror::Error;

use mftop::AxiomReport;

/// Failures that end a command, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("axiom violations: {0}")]
    Axioms(Box<AxiomReport>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => crate::EXIT_USAGE,
            CliError::Input { .. } | CliError::Io { .. } => crate::EXIT_INPUT,
            CliError::Axioms(_) => crate::EXIT_FAILURE,
        }
    }
}
