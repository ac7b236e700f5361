use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension {0} is not an even number in 2..=30")]
    InvalidDimension(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("word {bits:#x} does not fit in dimension {dim}")]
    OutOfRange { dim: usize, bits: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("vectors are linearly dependent")]
    Dependent,
    #[error("requested Gram pattern cannot be realized: {0}")]
    GramPattern(String),
    #[error("matrix does not preserve the symplectic form")]
    NotSymplectic,
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("invalid query: {0}")]
    InvalidQuery(String),
    #[error("size guard: {0}")]
    SizeGuard(String),
    #[error("linear system is singular: {0}")]
    Singular(String),
}

pub type Result<T> = std::result::Result<T, Error>;
