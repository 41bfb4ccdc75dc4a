use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge index {index} out of range ({count} edges)")]
    EdgeOutOfRange { index: usize, count: usize },

    #[error("a graph needs at least one vertex")]
    EmptyGraph,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graph has {edges} edges, above the limit of {limit}")]
    TooManyEdges { edges: usize, limit: usize },

    #[error("graph has {vertices} vertices, above the limit of {limit}")]
    TooManyVertices { vertices: usize, limit: usize },

    #[error("graph must be connected")]
    Disconnected,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors raised by a size guard rather than by bad input.
    pub fn is_size_guard(&self) -> bool {
        matches!(self, Error::TooManyEdges { .. } | Error::TooManyVertices { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
