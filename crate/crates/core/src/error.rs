use thiserror::Error;

/// Everything that can go wrong in the workbench.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} lists {neighbor} twice or lists itself")]
    NotSimple { vertex: usize, neighbor: usize },
    #[error("vertex {vertex} lists neighbor {neighbor}, but there are only {n} vertices")]
    VertexOutOfRange { vertex: usize, neighbor: usize, n: usize },
    #[error("{u} lists {v} but {v} does not list {u}")]
    NotSymmetric { u: usize, v: usize },
    #[error("graph is not connected ({components} components)")]
    Disconnected { components: usize },
    #[error("rotation system is not a plane embedding: component of vertex {vertex} has V - E + F = {euler}")]
    EmbeddingInconsistent { vertex: usize, euler: i64 },
    #[error("outside the class: {0}")]
    OutOfClass(String),
    #[error("face {face} has length {length}, not 5")]
    NotA5Face { face: usize, length: usize },
    #[error("{what} needs {needed} but the budget is {limit}")]
    BudgetExceeded { what: &'static str, needed: u128, limit: u128 },
    #[error("block {step} has no extension of a partial coloring")]
    NoExtension { step: usize },
    #[error("no reducible configuration in a residual of {} vertices", residual.len())]
    Stuck { residual: Vec<usize> },
    #[error("{kind} block at step {step} failed verification")]
    VerificationFailed { step: usize, kind: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid cover: {0}")]
    InvalidCover(String),
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}
