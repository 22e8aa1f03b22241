use std::process::ExitCode;

use qsigma_core::cartan::CartanError;
use qsigma_core::sigma::SigmaError;
use qsigma_core::tangent::TangentError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Internal(_) => ExitCode::from(3),
        }
    }
}

impl From<SigmaError> for CliError {
    fn from(e: SigmaError) -> Self {
        match e {
            SigmaError::Tangent(TangentError::Cartan(c)) => c.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<CartanError> for CliError {
    fn from(e: CartanError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<TangentError> for CliError {
    fn from(e: TangentError) -> Self {
        SigmaError::Tangent(e).into()
    }
}
