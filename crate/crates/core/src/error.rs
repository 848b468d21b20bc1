use thiserror::Error;

/// Errors raised by the kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unit must have at least one coordinate")]
    EmptyUnit,

    #[error("unit coordinate {index} is {value}; every coordinate must be finite and > 0")]
    NonPositiveUnit { index: usize, value: f64 },

    #[error("tolerance {eps} must satisfy 0 <= eps < min(u) = {min_unit}")]
    InvalidTolerance { eps: f64, min_unit: f64 },

    #[error("coordinate {index} is not finite ({value})")]
    NonFinite { index: usize, value: f64 },

    #[error("parameter {t} outside [{lo}, {hi}]")]
    OutOfDomain { t: f64, lo: f64, hi: f64 },

    #[error("a polytope needs at least one generator")]
    EmptyPolytope,

    #[error("operation requires dimension 2, got {0}")]
    NotPlanar(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
