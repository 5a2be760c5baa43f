use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A specification violates a documented invariant (parameter range,
    /// method/parameter compatibility, ...).
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A tuning or experiment parameter is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// An iterative numerical method failed to converge.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// Finite precision prevents a reliable answer (e.g. loss of positivity
    /// in a recurrence).
    #[error("precision loss: {0}")]
    Precision(String),

    /// Two inputs coincide where distinct values are required.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// A point lies on a branch cut or jump contour and no side was chosen.
    #[error("point on a jump contour: {0}")]
    OnContour(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
