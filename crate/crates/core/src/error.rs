//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by field arithmetic, the theta pipeline and the drivers.
#[derive(Debug, Error)]
pub enum Error {
    /// The characteristic is not an odd prime in the supported range.
    #[error("invalid characteristic {0}: need a prime 7 < p < 2^31")]
    InvalidPrime(u64),

    /// Inversion of the zero element.
    #[error("inversion of zero in F_p^2")]
    ZeroInverse,

    /// Field elements from different fields were combined.
    #[error("field mismatch: p={0} vs p={1}")]
    FieldMismatch(u64, u64),

    /// A null-point that cannot come from a principally polarized abelian variety.
    #[error("invalid null-point: {0}")]
    InvalidNullPoint(String),

    /// A theta index outside `[0, 4^g)` or a genus outside the supported range.
    #[error("index {index} out of range for genus {g}")]
    IndexOutOfRange { index: usize, g: usize },

    /// The null-point does not have the variety type the operation requires.
    #[error("wrong variety type: {0}")]
    WrongType(String),

    /// Vanishing count outside the allowed set for the genus.
    #[error("singular or corrupt null-point: {n_van} vanishing even theta constants (g={g})")]
    SingularOrCorrupt { g: usize, n_van: usize },

    /// A reconstruction formula hit a zero denominator.
    #[error("malformed null-point: {0}")]
    MalformedNullPoint(String),

    /// A linear system in the quartic reconstruction is singular.
    #[error("degenerate configuration: {0}")]
    DegenerateConfiguration(String),

    /// The curve model is singular.
    #[error("curve is not smooth: {0}")]
    NotSmooth(String),

    /// All invariants of a tuple vanish.
    #[error("all-zero invariant tuple")]
    ZeroInvariants,

    /// An internal consistency identity failed.
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    /// The genus-2 walk produced no Jacobian.
    #[error("graph connectivity violated: {0}")]
    ConnectivityViolation(String),

    /// The random walk hit its step cap.
    #[error("random walk gave up after {0} steps")]
    GaveUp(u64),

    /// Checkpoint file unusable.
    #[error("checkpoint error: {0}")]
    Checkpoint(String),

    /// Malformed user input.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
