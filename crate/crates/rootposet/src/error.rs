//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by construction, preconditions, and theorem checks.
#[derive(Debug, Error)]
pub enum Error {
    /// An inadmissible (family, rank) pair was requested.
    #[error("inadmissible root system type: {0}")]
    InadmissibleType(String),

    /// A coefficient vector does not match the rank of the system.
    #[error("coefficient vector has length {got}, expected rank {expected}")]
    DimensionMismatch { got: usize, expected: usize },

    /// A vector that is not a positive root of the system.
    #[error("not a positive root of {system}: {coeffs:?}")]
    NotARoot { system: String, coeffs: Vec<i64> },

    /// A root is not long where a long root is required.
    #[error("not a long root: {0}")]
    NotLong(String),

    /// A root set that is not an upper ideal where one is required.
    #[error("not an upper ideal: {0}")]
    NotUpperIdeal(String),

    /// Interval endpoints out of order.
    #[error("{lower} is not below {upper} in the root order")]
    NotComparable { lower: String, upper: String },

    /// A simple root whose coefficient in the highest root is even,
    /// passed where an odd one is required.
    #[error("simple root {alpha} has even coefficient {height} in the highest root")]
    EvenPivot { alpha: usize, height: i64 },

    /// The boolean-cube test is implemented exhaustively for k <= 3 only.
    #[error("boolean-cube test supports k <= 3, got k = {0}")]
    CubeRankTooLarge(usize),

    /// A computation contradicted a result it is required to satisfy.
    /// Carries the failing identity and a serialized witness.
    #[error("theorem violation in {check}: {witness}")]
    TheoremViolation { check: String, witness: String },

    /// Malformed root token on the command line.
    #[error("cannot parse root token `{0}`")]
    BadRootToken(String),

    /// Malformed type token on the command line.
    #[error("unknown root system token `{0}` (expected e.g. A2, B3, E8)")]
    BadTypeToken(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
