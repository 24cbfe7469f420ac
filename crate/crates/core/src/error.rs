use thiserror::Error;

use crate::blade::MAX_GENERATORS;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid signature ({p},{q}): need 1 <= p+q <= {MAX_GENERATORS}")]
    InvalidSignature { p: usize, q: usize },
    #[error("signature mismatch: Cl({0}) vs Cl({1})")]
    SignatureMismatch(String, String),
    #[error("field mismatch: {0:?} vs {1:?}")]
    FieldMismatch(crate::FieldTag, crate::FieldTag),
    #[error("blade mask {mask:#b} is not valid for n = {n}")]
    BladeOutOfRange { mask: u32, n: usize },
    #[error("generator index {index} out of range 1..={n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("blade indices must be strictly increasing")]
    NonIncreasingIndices,
    #[error("rank {k} out of range 0..={n}")]
    RankOutOfRange { k: usize, n: usize },
    #[error("non-finite coefficient")]
    NonFinite,
    #[error("imaginary coefficient in a real multivector")]
    ImaginaryInReal,
    #[error("exponential did not converge within {max_terms} terms")]
    ConvergenceFailure { max_terms: usize },
    #[error("invalid check configuration: {0}")]
    InvalidConfig(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
