use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("empty input")]
    EmptyInput,

    #[error("vertex {vertex} out of range (graph has {n} vertices)")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// The graph holds no instance of the requested motif.
    #[error("no instances of {0} found in graph")]
    NoInstances(String),

    #[error("insufficient positive samples: requested {requested}, found {achieved}")]
    InsufficientPositives { requested: usize, achieved: usize },

    #[error("insufficient negative samples: requested {requested}, generated {achieved}")]
    InsufficientNegatives { requested: usize, achieved: usize },

    #[error("dataset record {id}: {message}")]
    InvalidRecord { id: u64, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
