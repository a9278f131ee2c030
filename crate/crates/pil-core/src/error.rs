//! Shared error type for fallible operations.

use std::fmt;

/// Errors reported by arrangement, polynomial and ideal constructors.
///
/// Internal dimension bookkeeping (matrix shapes, coefficient lengths) is
/// enforced with assertions instead: violating those is a caller bug, not a
/// recoverable condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A defining form or direction vector was identically zero.
    ZeroVector,
    /// A vector length does not match the ambient dimension.
    DimensionMismatch { expected: usize, found: usize },
    /// Hyperplane label outside `0..n`.
    InvalidLabel { label: usize, n: usize },
    /// Power-ideal parameter below the admissible range `k >= -(rho+1)`.
    KBelowBound { k: i64, bound: i64 },
    /// Differential operator degree exceeds the target polynomial degree.
    DegreeTooLarge {
        op_degree: usize,
        poly_degree: usize,
    },
    /// Matroid ground set exceeds the 16-label cap.
    GroundSetTooLarge { n: usize },
    /// Two matroids compared on ground sets of different sizes.
    GroundSizeMismatch { left: usize, right: usize },
    /// The hyperplane is a loop or coloop where the operation forbids it.
    LoopOrColoop { label: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroVector => write!(f, "zero vector where a nonzero one is required"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::InvalidLabel { label, n } => {
                write!(
                    f,
                    "invalid hyperplane label {label} (arrangement has {n} forms)"
                )
            }
            Error::KBelowBound { k, bound } => {
                write!(
                    f,
                    "k = {k} is below the admissible bound {bound} = -(rho+1)"
                )
            }
            Error::DegreeTooLarge {
                op_degree,
                poly_degree,
            } => write!(
                f,
                "operator degree {op_degree} exceeds polynomial degree {poly_degree}"
            ),
            Error::GroundSetTooLarge { n } => {
                write!(f, "ground set of size {n} exceeds the 16-label cap")
            }
            Error::GroundSizeMismatch { left, right } => {
                write!(f, "ground sets differ in size: {left} vs {right}")
            }
            Error::LoopOrColoop { label } => {
                write!(f, "hyperplane {label} is a loop or coloop")
            }
        }
    }
}

impl std::error::Error for Error {}
