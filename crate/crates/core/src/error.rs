use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {0}: need d >= 2")]
    InvalidDimension(usize),

    #[error("unsupported dimension {0}: {1}")]
    UnsupportedDimension(usize, &'static str),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian: max asymmetry {0:.3e}")]
    NotHermitian(f64),

    #[error("trace is not 1: deviation {0:.3e}")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite: min eigenvalue {0:.3e}")]
    NotPositive(f64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("singular correlation tensor: ||T|| = 0")]
    SingularTensor,

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("basis vectors are not orthonormal: max deviation {0:.3e}")]
    NotOrthonormal(f64),

    #[error("no root in bracket: {0}")]
    NoRoot(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
