use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("linearly dependent basis")]
    DependentBasis,
    #[error("zero vector")]
    ZeroVector,
    #[error("vector is not null")]
    NotNull,
    #[error("point lies on the lightcone of the chart vertex")]
    OnLightcone,
    #[error("direction is not lightlike")]
    NotLightlike,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("value is not a rational square: {0}")]
    Irrational(String),
    #[error("generators do not span a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("empty sample set")]
    EmptySample,
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
