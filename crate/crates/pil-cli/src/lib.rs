//! Harness around the core library: arrangement file format, seeded pencil
//! constructions, scenario runners and machine-readable reports.

use std::fmt;

pub mod corpus;
pub mod fileformat;
pub mod pencil;
pub mod report;
pub mod scenario;

/// Errors raised by the harness layer; all of them map to an input/config
/// problem (CLI exit code 2), never to a verification failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HarnessError {
    Parse(fileformat::ParseError),
    Core(pil_core::Error),
    InvalidPencil(String),
    GenericityExhausted { attempts: usize, reason: String },
}

impl fmt::Display for HarnessError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HarnessError::Parse(e) => write!(f, "{e}"),
            HarnessError::Core(e) => write!(f, "{e}"),
            HarnessError::InvalidPencil(msg) => write!(f, "invalid pencil configuration: {msg}"),
            HarnessError::GenericityExhausted { attempts, reason } => {
                write!(
                    f,
                    "genericity post-checks failed after {attempts} attempts: {reason}"
                )
            }
        }
    }
}

impl std::error::Error for HarnessError {}

impl From<fileformat::ParseError> for HarnessError {
    fn from(e: fileformat::ParseError) -> Self {
        HarnessError::Parse(e)
    }
}

impl From<pil_core::Error> for HarnessError {
    fn from(e: pil_core::Error) -> Self {
        HarnessError::Core(e)
    }
}
