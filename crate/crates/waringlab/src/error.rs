use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),

    #[error("0 is not invertible modulo {0}")]
    NonInvertible(u64),

    #[error("order {tau} does not divide the ambient group order {ambient_order}")]
    InvalidOrder { tau: u64, ambient_order: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("ambient mismatch: {left} vs {right}")]
    AmbientMismatch { left: String, right: String },

    #[error("refusing exhaustive enumeration: {0}")]
    RefuseExhaustive(String),

    #[error("refusing quadratic-size computation: {0}")]
    RefuseQuadratic(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
