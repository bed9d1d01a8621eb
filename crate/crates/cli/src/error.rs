use std::process::ExitCode;

use jacobi_spectra::oracle::OracleError;
use jacobi_spectra::sprep::SprepError;
use jacobi_spectra::{ParamError, SpectrumError, WeylError};

/// Failure of a command, classified by exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad input: exit 2.
    #[error("{0}")]
    Usage(String),
    /// Numerics did not converge: exit 3.
    #[error("{0}")]
    Numeric(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            Self::Usage(_) => ExitCode::from(2),
            Self::Numeric(_) | Self::Io(_) => ExitCode::from(3),
        }
    }
}

impl From<ParamError> for CliError {
    fn from(e: ParamError) -> Self {
        Self::Usage(e.to_string())
    }
}

impl From<WeylError> for CliError {
    fn from(e: WeylError) -> Self {
        match e {
            WeylError::InvalidTheta(_) => Self::Usage(e.to_string()),
            WeylError::PoleOfM { .. } | WeylError::SingularAt { .. } => Self::Numeric(e.to_string()),
        }
    }
}

impl From<SpectrumError> for CliError {
    fn from(e: SpectrumError) -> Self {
        match e {
            SpectrumError::Weyl(w) => w.into(),
            SpectrumError::ResidueNoConverge { .. } | SpectrumError::NoLowerBound { .. } => {
                Self::Numeric(e.to_string())
            }
            SpectrumError::InvalidAtom(_) => Self::Numeric(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::OutsideInterval(_) => Self::Usage(e.to_string()),
            _ => Self::Numeric(e.to_string()),
        }
    }
}

impl From<SprepError> for CliError {
    fn from(e: SprepError) -> Self {
        match e {
            SprepError::TailTooFat { .. } => Self::Numeric(e.to_string()),
            _ => Self::Usage(e.to_string()),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        Self::Io(e.into())
    }
}
