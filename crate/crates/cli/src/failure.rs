use std::fmt;
use std::process::ExitCode;

use twistk::closedform::ClosedFormError;
use twistk::khorami::KhoramiError;
use twistk::segal::SegalError;

/// A command failure, carrying its exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// Valid input the computations do not cover: exit 3.
    OutOfScope(String),
    Internal(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Usage(_) => 2,
            Failure::OutOfScope(_) => 3,
            Failure::Internal(_) => 1,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::OutOfScope(m) => f.write_str(m),
            Failure::Internal(e) => write!(f, "{e:#}"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Internal(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Internal(e.into())
    }
}

impl From<ClosedFormError> for Failure {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::InvalidGroup(_) | ClosedFormError::ZeroTwist => {
                Failure::Usage(e.to_string())
            }
            ClosedFormError::OutOfScope(_) | ClosedFormError::NoDouglasFormula(_) => {
                Failure::OutOfScope(e.to_string())
            }
            _ => Failure::Internal(e.into()),
        }
    }
}

impl From<SegalError> for Failure {
    fn from(e: SegalError) -> Self {
        match e {
            SegalError::ZeroTwist | SegalError::Arith(_) | SegalError::Json(_) => {
                Failure::Usage(e.to_string())
            }
            SegalError::InvalidSpec { .. } => Failure::Usage(e.to_string()),
            SegalError::OutOfScope(_) | SegalError::UnsupportedGroup(_) => {
                Failure::OutOfScope(e.to_string())
            }
            _ => Failure::Internal(e.into()),
        }
    }
}

impl From<KhoramiError> for Failure {
    fn from(e: KhoramiError) -> Self {
        match e {
            KhoramiError::TruncationTooSmall(_) | KhoramiError::ZeroTwist => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Internal(e.into()),
        }
    }
}
