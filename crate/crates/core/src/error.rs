use thiserror::Error;

use crate::charmatrix::Ring;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty polytope: every simplex factor has dimension zero")]
    EmptyPolytope,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },

    #[error("invalid characteristic matrix: {0}")]
    InvalidMatrix(String),

    #[error("degenerate presentation: {0}")]
    DegeneratePresentation(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("invalid partition {parts:?}: parts must be positive, weakly decreasing and sum to {expected}")]
    InvalidPartition { parts: Vec<usize>, expected: usize },

    #[error("polynomial is not homogeneous of degree {0}")]
    NotTopDegree(usize),

    #[error("inconsistent orientation calibration at vertex {vertex:?}")]
    InconsistentCalibration { vertex: Vec<usize> },

    #[error("invalid Stong parameters: {0}")]
    InvalidStongParams(String),

    #[error("dimension {dimension} exceeds the configured cap {cap}")]
    CapExceeded { dimension: usize, cap: usize },

    #[error("incomplete invariant table: {0}")]
    IncompleteTable(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("checkpoint error: {0}")]
    Checkpoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
