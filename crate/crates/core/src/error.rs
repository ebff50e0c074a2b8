use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("repeated point {0} in cycle notation")]
    RepeatedPoint(usize),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("group order exceeds guard of {guard} elements (--guard)")]
    GuardExceeded { guard: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    /// An internal consistency assertion failed. This always indicates an
    /// engine bug, never bad input.
    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("search budget of {budget} adjacency probes exhausted")]
    BudgetExceeded { budget: u64 },

    #[error("unknown check id `{0}`")]
    UnknownCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
