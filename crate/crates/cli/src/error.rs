use std::fmt::Display;
use std::process::ExitCode;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error at `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("numerical failure: {0}")]
    Numerical(lifshitz::Error),
}

impl CliError {
    pub fn config(key: impl Into<String>, message: impl Display) -> Self {
        CliError::Config {
            key: key.into(),
            message: message.to_string(),
        }
    }

    /// Engine errors: convergence failures are numerical, anything else is bad input.
    pub fn engine(err: lifshitz::Error) -> Self {
        if err.is_numerical() {
            CliError::Numerical(err)
        } else {
            CliError::config("input", err)
        }
    }

    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Config { .. } => ExitCode::from(2),
            CliError::Numerical(_) => ExitCode::from(3),
        }
    }
}
