use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed input.
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    /// The engines refused or could not evaluate the instance.
    #[error(transparent)]
    Engine(#[from] zqspin::Error),
    /// A checked identity did not hold; points at a bug, not at the input.
    #[error("{0}")]
    Invariant(String),
}

impl CliError {
    /// Library errors raised while building graphs and models from files are
    /// input errors, not engine failures.
    pub fn input(e: zqspin::Error) -> Self {
        CliError::Parse(e.to_string())
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Parse(_) | CliError::Io(_) => ExitCode::from(2),
            CliError::Engine(_) => ExitCode::from(3),
            CliError::Invariant(_) => ExitCode::from(1),
        }
    }
}
