//! Error type shared by all modules.

use core::fmt;

/// Errors produced by the library.
///
/// All operations are total on valid inputs; every variant corresponds to a
/// precondition violation or, for [`Error::NoConvergence`], an iterative
/// solver giving up.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Two objects that must share a dimension do not.
    DimensionMismatch {
        /// What was being checked.
        context: &'static str,
        /// Dimension required by the operation.
        expected: usize,
        /// Dimension actually supplied.
        actual: usize,
    },
    /// A construction would exceed the ambient dimension cap.
    DimensionOverflow {
        /// Dimension the construction would need.
        required: usize,
        /// The cap it violates.
        cap: usize,
    },
    /// A matrix that must be Hermitian is not.
    NotHermitian {
        /// Frobenius norm of the anti-Hermitian part.
        residual: f64,
    },
    /// A matrix that must be unitary is not.
    NotUnitary {
        /// Frobenius norm of `U†U − I`.
        residual: f64,
    },
    /// A vector set that must be orthonormal is not.
    NotOrthonormal {
        /// Largest deviation of the Gram matrix from the identity.
        residual: f64,
    },
    /// A state vector that must have unit norm does not.
    NotNormalized {
        /// The norm actually found.
        norm: f64,
    },
    /// The Jacobi sweep failed to push the off-diagonal mass below threshold.
    NoConvergence {
        /// Sweeps performed before giving up.
        sweeps: usize,
        /// Remaining off-diagonal Frobenius mass.
        off_diagonal: f64,
    },
    /// A scalar or index argument is outside its documented range.
    InvalidArgument {
        /// Which precondition failed.
        context: &'static str,
    },
    /// Structured input (sorted sequences, witness-value shapes) violates its
    /// documented shape.
    ShapeViolation {
        /// Which shape constraint failed.
        context: &'static str,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                context,
                expected,
                actual,
            } => write!(
                f,
                "dimension mismatch in {context}: expected {expected}, got {actual}"
            ),
            Error::DimensionOverflow { required, cap } => {
                write!(f, "dimension {required} exceeds cap {cap}")
            }
            Error::NotHermitian { residual } => {
                write!(f, "matrix is not Hermitian (residual {residual:.3e})")
            }
            Error::NotUnitary { residual } => {
                write!(f, "matrix is not unitary (residual {residual:.3e})")
            }
            Error::NotOrthonormal { residual } => {
                write!(f, "vectors are not orthonormal (residual {residual:.3e})")
            }
            Error::NotNormalized { norm } => {
                write!(f, "state is not normalized (norm {norm:.6})")
            }
            Error::NoConvergence {
                sweeps,
                off_diagonal,
            } => write!(
                f,
                "eigensolver did not converge after {sweeps} sweeps (off-diagonal {off_diagonal:.3e})"
            ),
            Error::InvalidArgument { context } => write!(f, "invalid argument: {context}"),
            Error::ShapeViolation { context } => write!(f, "shape violation: {context}"),
        }
    }
}

impl core::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;
