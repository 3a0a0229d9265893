use thiserror::Error;

/// Errors raised by constructions and verifiers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("word length {0} exceeds the supported maximum of {max}", max = crate::word::MAX_LEN)]
    WordTooLong(usize),

    #[error("invalid word text {0:?}: expected a string of '0'/'1'")]
    ParseWord(String),

    #[error("coordinate {coordinate} out of range 1..={len}")]
    CoordinateOutOfRange { coordinate: usize, len: usize },

    #[error("length {0} is not of the form 2^t - 1")]
    NotPerfectLength(usize),

    #[error("{0} is not a codeword")]
    NotACodeword(String),

    #[error("code dimension {dimension} exceeds the enumeration limit {limit}")]
    EnumerationLimit { dimension: usize, limit: usize },

    #[error("code has no enumerator")]
    NoEnumerator,

    #[error("the zero code has no nonzero codewords")]
    ZeroCode,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("invalid constraints: {0}")]
    InvalidConstraints(String),

    #[error("subset {index} is not contained in the universe")]
    SubsetOutsideUniverse { index: usize },

    #[error("subset {index} is empty")]
    EmptySubset { index: usize },

    #[error("length n = {0} is not of the form 4^t - 1 with t >= 2")]
    NotPreparataLength(usize),

    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
