use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("invalid exponent: {0}")]
    InvalidExponent(String),

    #[error("inadmissible exponents: {constraint}")]
    Inadmissible { constraint: String },

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;
