use std::path::PathBuf;

/// Errors produced by the planning library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Malformed argument (zero vector, unknown node, zero-length edge, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A documented precondition was violated by the caller.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Out-of-range planner or sampler parameter.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// Operation would corrupt an internal structure (e.g. a cycle in the tree).
    #[error("logic error: {0}")]
    Logic(String),

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("unsupported dimension {0}: only 2-D scenes can be rendered")]
    UnsupportedDimension(usize),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
