use thiserror::Error;

use crate::algebra::Regime;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("rapidity {re}{im:+}i is not consistent with the {regime} regime")]
    RegimeMismatch { re: f64, im: f64, regime: Regime },

    #[error("Ising partner angle undefined: {0}")]
    ConstraintUndefined(String),

    #[error("invalid network: {0}")]
    InvalidSpec(String),

    #[error("index {index} out of range 0..{len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("regime classification undefined: {0}")]
    ClassificationUndefined(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("eigenvalue iteration did not converge: {0}")]
    NoConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
