use thiserror::Error;

/// Errors raised by the library. Variant names double as the condition
/// names surfaced by the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("generator count {0} is outside 1..=16")]
    InvalidGeneratorCount(usize),

    #[error("index {index} is outside 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("not a unit: constant term {0} is not invertible")]
    NotAUnit(String),

    #[error("parity: image of x{0} is not odd")]
    Parity(usize),

    #[error("not well-defined: {0}")]
    NotWellDefined(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("not an automorphism: linear part is singular")]
    NotAnAutomorphism,

    #[error("solvability condition {0} fails")]
    Solvability(String),

    #[error("not a member of {0}")]
    NotInGroup(String),

    #[error("no preimage: top coefficient is forced to differ by {0}")]
    NoPreimage(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// The variant name, used as a stable condition name.
    pub fn condition(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidGeneratorCount(_) => "InvalidGeneratorCount",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NotAUnit(_) => "NotAUnit",
            Error::Parity(_) => "Parity",
            Error::NotWellDefined(_) => "NotWellDefined",
            Error::NotInvertible(_) => "NotInvertible",
            Error::NotAnAutomorphism => "NotAnAutomorphism",
            Error::Solvability(_) => "Solvability",
            Error::NotInGroup(_) => "NotInGroup",
            Error::NoPreimage(_) => "NoPreimage",
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Unsupported(_) => "Unsupported",
            Error::Parse { .. } => "Parse",
            Error::Internal(_) => "Internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
