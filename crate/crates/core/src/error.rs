use thiserror::Error;

use crate::vertex_set::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid connection set for n = {n}: {reason}")]
    InvalidConnectionSet { n: usize, reason: String },

    #[error("vertex {vertex} out of range 1..={vertex_count}")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },

    #[error("vertex count {0} exceeds the supported maximum of 64")]
    TooManyVertices(usize),

    #[error("{what} limited to {limit}, got {actual}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("face {0} is not in the complex")]
    FaceNotInComplex(VertexSet),

    #[error("complex is not pure")]
    NotPure,

    #[error("domain violation: {0}")]
    Domain(String),

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("not an octahedron: {0}")]
    NotOctahedron(String),

    #[error("construction check failed: {0}")]
    Construction(String),

    /// Two independent routes disagreed, or a theorem-level implication was
    /// violated inside a single report. Always a bug.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn is_guard(&self) -> bool {
        matches!(self, Error::GuardExceeded { .. })
    }
}
