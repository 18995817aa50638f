use thiserror::Error;

/// Errors raised by the tropical geometry routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropError {
    #[error("invalid point: {0}")]
    InvalidPoint(String),

    #[error("dimension mismatch: expected {expected} coordinates, found {found}")]
    DimensionError { expected: usize, found: usize },

    #[error("polytope needs at least one vertex")]
    EmptyPolytope,

    #[error("vertex {index} duplicates an earlier vertex")]
    DuplicateVertex { index: usize },

    #[error("expected a tropical simplex with {expected} vertices, found {found}")]
    NotASimplex { expected: usize, found: usize },

    #[error("vertex matrix is tropically singular; the simplex lies in a tropical hyperplane")]
    DegenerateSimplex,

    #[error("polytope has no full-dimensional trunk")]
    NoTrunk,

    #[error("starting point is not inside the simplex")]
    InvalidStart,

    #[error("ball radius must be positive")]
    DegenerateBall,

    #[error("need at least {needed} vertices, found {found}")]
    TooFewVertices { needed: usize, found: usize },

    #[error("no sampled point fell inside the polytope")]
    InsufficientSamples,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = TropError> = std::result::Result<T, E>;
