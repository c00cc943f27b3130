use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("structure mismatch: {0}")]
    Structure(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: matrix order {order} is above the limit {limit}")]
    Capacity { order: usize, limit: usize },

    #[error("unsupported decomposition: {0}")]
    UnsupportedDecomposition(String),

    #[error("malformed matrix file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
