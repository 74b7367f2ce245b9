use thiserror::Error;

use crate::combinatorics::KSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid k-set: {0}")]
    InvalidKSet(String),
    #[error("invalid decorated permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid Grassmann necklace: {0}")]
    InvalidNecklace(String),
    #[error("enumeration of binom({n}, {k}) subsets exceeds cap n <= {cap}")]
    SizeCap { n: usize, k: usize, cap: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("malformed embedding: {0}")]
    Embedding(String),
    #[error("face label collision: faces {0} and {1} both carry {2}")]
    LabelCollision(usize, usize, KSet),
    #[error("vertex {0} is frozen")]
    FrozenVertex(usize),
    #[error("vertex {0} out of range")]
    NoSuchVertex(usize),
    #[error("exchange polynomial not divisible by the cluster variable at vertex {0}")]
    LaurentViolation(usize),
    #[error("{0} admits no square move in this collection")]
    NotSquareMovable(KSet),
    #[error("{0} lies in GP B, no decomposition needed")]
    NoDecompositionNeeded(KSet),
    #[error("pole: symbol {0} evaluates to zero with a negative exponent")]
    Pole(String),
    #[error("missing value for symbol {0}")]
    MissingSymbol(String),
    #[error("no usable perfect orientation: {0}")]
    Orientation(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
