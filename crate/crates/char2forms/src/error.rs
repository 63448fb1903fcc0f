use thiserror::Error;

/// Errors raised by every module of the crate.
///
/// [`Error::exit_code`] maps them onto the CLI convention: 1 for I/O and
/// parse failures, 2 for domain errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("extension degree {0} outside 1..=16")]
    DegreeOutOfRange(u32),

    #[error("element {bits:#x} does not belong to GF(2^{m})")]
    ElementOutOfRange { bits: u32, m: u32 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("field mismatch: GF(2^{0}) vs GF(2^{1})")]
    FieldMismatch(u32, u32),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("characteristic polynomial does not split over GF(2^{m}); root-free factor {factor}")]
    NotSplit { m: u32, factor: String },

    #[error("outside the exhaustive envelope: {0}")]
    EnvelopeExceeded(String),

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    #[error("seed vector lies outside the algebra")]
    SeedOutsideAlgebra,

    #[error("not closed: {0}")]
    NotClosed(String),

    #[error("certificate check failed: {0}")]
    Certificate(String),

    #[error("parse error (line {line}): {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Error {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn dim(msg: impl Into<String>) -> Error {
        Error::DimensionMismatch(msg.into())
    }

    pub(crate) fn pre(msg: impl Into<String>) -> Error {
        Error::Precondition(msg.into())
    }

    pub(crate) fn param(msg: impl Into<String>) -> Error {
        Error::InvalidParameter(msg.into())
    }

    /// Process exit status for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Io(_) => 1,
            _ => 2,
        }
    }
}
