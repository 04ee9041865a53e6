use thiserror::Error;

/// Errors produced by state construction, measure evaluation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A state failed one of its structural invariants (norm, Hermiticity,
    /// trace, positivity).
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// Operands have incompatible subsystem structure.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A subsystem selection is empty, repeated or out of range.
    #[error("invalid subsystem selection: {0}")]
    InvalidSubsystems(String),

    /// K0†K0 + K1†K1 deviates from the identity.
    #[error("kraus pair is not trace preserving (max entrywise deviation {max_dev:.3e})")]
    NotTracePreserving { max_dev: f64 },

    /// A scalar parameter is outside its admissible range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A precondition of an operation does not hold for the given input.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Tomography records are incomplete or inconsistent.
    #[error("tomography: {0}")]
    Tomography(String),

    /// Sweep or channel configuration rejected, with the offending field.
    #[error("config: {0}")]
    Config(String),

    /// A numerical routine could not produce a usable result.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    /// A state, counts or config file could not be parsed.
    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
