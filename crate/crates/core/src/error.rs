use thiserror::Error;

use crate::scalar::Backend;

#[derive(Debug, Error)]
pub enum Error {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("backend mismatch: {0:?} vs {1:?}")]
    BackendMismatch(Backend, Backend),

    #[error("{0} is only available on the float backend")]
    ExactUnsupported(&'static str),

    #[error("expected a square matrix, got {0}x{1}")]
    NotSquare(usize, usize),

    #[error("operation undefined for the zero matrix")]
    ZeroMatrix,

    #[error("matrix is not idempotent (residual {0:.3e})")]
    NotIdempotent(f64),

    #[error("pair is not in the {0} relation")]
    NotInRelation(&'static str),

    #[error("matrix is not a diamond predecessor of the given base (residual {0:.3e})")]
    NotPredecessor(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed matrix data: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
