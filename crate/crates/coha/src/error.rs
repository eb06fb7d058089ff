//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CohaError {
    /// A dimension vector, stability, or framing is not keyed by the
    /// quiver's vertex set.
    #[error("dimension vector incompatible with quiver: {0}")]
    KeyMismatch(String),

    #[error("slope undefined for the zero dimension vector")]
    UndefinedSlope,

    #[error("operation requires a nonzero dimension vector")]
    ZeroDimVector,

    #[error("operands live over different alphabets: {0}")]
    AlphabetMismatch(String),

    /// Exact division left a remainder. For shuffle assembly this
    /// signals an implementation bug, never bad user input.
    #[error("exact division failed: nonzero remainder ({0})")]
    DivisionFailure(String),

    #[error("quiver is not symmetric; {0}")]
    NonSymmetric(String),

    #[error("partition has more parts than available variables")]
    PartitionTooLong,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("element is not homogeneous")]
    InhomogeneousBody,

    #[error("dimension vector has unsupported slope: {0}")]
    WrongSlope(String),

    #[error("enumeration exceeds the size guard: {0}")]
    SizeGuard(String),

    #[error("truncation bounds too small: {0}")]
    TruncationBounds(String),

    #[error("series has non-unit constant term")]
    NonUnitConstantTerm,

    #[error("parse error: {0}")]
    Parse(String),
}
