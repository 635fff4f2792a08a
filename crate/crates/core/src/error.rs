use thiserror::Error;

use crate::groups::GroupError;

/// Errors raised by the arithmetic, geometry and search layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(u64),

    #[error("group order must be at least 2, got {0}")]
    OrderTooSmall(u64),

    #[error("hyperbolicity violated: no signature with skeleton ({h},{r}) has genus >= 2")]
    NotHyperbolic { h: u64, r: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("generating vector has {got} entries, signature needs {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error(transparent)]
    Group(#[from] GroupError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
