use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of {0} is not in Q(sqrt2, sqrt3)")]
    NotRepresentable(String),

    #[error("square root of a negative number")]
    NegativeInput,

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("intersection form is degenerate")]
    Degenerate,

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("unknown surface '{0}'")]
    UnknownSurface(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation failed ({invariant}) at {location}")]
    Validation { invariant: String, location: String },

    #[error("no moving curves and no representable cap")]
    EmptyCatalogue,

    #[error("zero class has no ray")]
    ZeroClass,

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn validation(invariant: impl Into<String>, location: impl Into<String>) -> Self {
        Error::Validation {
            invariant: invariant.into(),
            location: location.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::PreconditionFailed(msg.into())
    }
}
