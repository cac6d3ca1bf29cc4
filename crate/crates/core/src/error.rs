use thiserror::Error;

pub type Result<T> = std::result::Result<T, GraphError>;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: u64, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("decode error: {0}")]
    Decode(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("operation not supported by {container}: {operation}")]
    Unsupported {
        container: &'static str,
        operation: &'static str,
    },

    #[error("configuration error: {0}")]
    Config(String),

    /// Internal bookkeeping diverged from the container it describes.
    #[error("logic error: {0}")]
    Logic(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl GraphError {
    pub(crate) fn out_of_range(vertex: impl Into<u64>, n: usize) -> Self {
        GraphError::VertexOutOfRange {
            vertex: vertex.into(),
            n,
        }
    }
}
