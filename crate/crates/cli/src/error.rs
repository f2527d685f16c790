use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("{0}")]
    Numeric(fracstab::Error),

    #[error("blow-up: state norm {norm:.3e} exceeded the ceiling at t = {time}")]
    BlowUp { time: f64, norm: f64 },
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::BlowUp { .. } => 4,
        })
    }
}

impl From<fracstab::Error> for CliError {
    fn from(e: fracstab::Error) -> Self {
        use fracstab::Error as E;
        match e {
            E::BlowUp { time, norm } => CliError::BlowUp { time, norm },
            E::InvalidParameter(msg) => CliError::Config(msg),
            E::DimensionMismatch { .. } => CliError::Config(e.to_string()),
            other => CliError::Numeric(other),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}
