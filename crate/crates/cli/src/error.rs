use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed or inconsistent input.
    #[error("invalid input: {0}")]
    Validation(String),
    /// A numerical identity or convergence check failed.
    #[error("numerical verification failed: {0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }

    /// Wraps a core error raised while loading input: always a validation failure.
    pub fn input(context: &str, e: folrho_core::Error) -> CliError {
        CliError::Validation(format!("{context}: {e}"))
    }
}

impl From<folrho_core::Error> for CliError {
    fn from(e: folrho_core::Error) -> Self {
        if e.is_numerical() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Validation(e.to_string())
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
