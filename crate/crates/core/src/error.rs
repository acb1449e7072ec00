use thiserror::Error;

use crate::lattice::LatticeVector;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vectors of mixed dimension: expected {expected}, found {found}")]
    MixedDimension { expected: usize, found: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported dimension {0} (supported: 1..=4)")]
    UnsupportedDimension(usize),

    #[error("{u} and {v} do not form a basis of Z^2 (determinant {det})")]
    NotABasis {
        u: LatticeVector,
        v: LatticeVector,
        det: i64,
    },

    #[error("resolution k = {0} is invalid (k must be at least 3)")]
    InvalidResolution(usize),

    #[error("resolution k = {k} exceeds the cap {cap} for dimension {n}")]
    ResolutionCap { n: usize, k: usize, cap: usize },

    #[error("invalid refinement factor {0} (must be at least 2)")]
    InvalidFactor(usize),

    #[error("step {index} ({step}) is not an edge direction of the torus grid")]
    InvalidStep { index: usize, step: LatticeVector },

    #[error("path does not return to its start vertex")]
    NotALoop,

    #[error("assignment is not proper")]
    NotProper,

    #[error("cell {0:?} is outside the torus grid")]
    InvalidCell(Vec<usize>),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("search node limit of {0} reached")]
    NodeLimit(u64),

    #[error("invalid decomposition: {}", .0.join("; "))]
    InvalidDecomposition(Vec<String>),

    #[error("construction invariant violated: {0}")]
    ConstructionInvariantViolated(String),

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("invalid witness: {0}")]
    InvalidWitness(String),

    #[error("set does not contain the origin")]
    MissingZero,

    #[error("set is not symmetric: {0} is present but its negation is not")]
    NotSymmetric(LatticeVector),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
