use diagasym::model::ValidationReport;
use diagasym::Error;

use crate::model_file::ModelFileError;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 1;
    pub const VALIDATION: u8 = 2;
    pub const DIRECTION: u8 = 3;
    pub const VERIFICATION: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    ModelFile(#[from] ModelFileError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("model fails validation (use --force to proceed anyway)\n{0}")]
    Validation(Box<ValidationReport>),
    #[error("asymptotic refuses models failing validation, even with --force\n{0}")]
    ForceRefused(Box<ValidationReport>),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            Self::ModelFile(e) => e.code(),
            Self::Core(e) => e.code(),
            Self::Validation(_) => "ValidationFailed",
            Self::ForceRefused(_) => "ForceRefused",
            Self::Io(_) => "Io",
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::ModelFile(ModelFileError::Model(e)) | Self::Core(e) => core_exit_code(e),
            Self::ModelFile(_) | Self::Io(_) => exit::USAGE,
            Self::Validation(_) | Self::ForceRefused(_) => exit::VALIDATION,
        }
    }
}

fn core_exit_code(e: &Error) -> u8 {
    use Error::*;
    match e {
        ParallelLines(..) | ConcurrentTriple(..) | NonPositiveCoefficient(_) => exit::VALIDATION,
        AxisDirection | BoundaryDirection | DegenerateNumerator | DegenerateDenominator(..)
        | DegenerateConstant(_) => exit::DIRECTION,
        ZeroCoefficient { .. } | DecompositionMismatch => exit::VERIFICATION,
        _ => exit::USAGE,
    }
}
