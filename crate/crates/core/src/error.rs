use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground-set size {0} out of range 1..=20")]
    GroundSize(usize),

    #[error("element out of range: {element} not in 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("ground-set mismatch: expected n = {expected}, found n = {found}")]
    GroundMismatch { expected: usize, found: usize },

    #[error("{sub} is not a subset of {sup}")]
    NotSubset { sub: String, sup: String },

    #[error("n >= {min} required (got n = {n})")]
    TooSmall { n: usize, min: usize },

    #[error("n <= {max} required (got n = {n})")]
    TooLarge { n: usize, max: usize },

    #[error("not a permutation of 1..={n}: {detail}")]
    NotPermutation { n: usize, detail: String },

    #[error("malformed subset {0:?}")]
    BadSubset(String),

    #[error("the empty set has no coordinate in H_n")]
    EmptyCoordinate,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not a supported prime")]
    NotPrime(u64),

    #[error("p = {p} too small for general position of {lines} lines in dimension {dim}")]
    GeneralPosition { p: u64, lines: usize, dim: usize },

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("entry {0} is not defined in the target field")]
    BadEntry(String),

    #[error("dimension must be at least 1")]
    ZeroDimension,

    #[error("empty index set")]
    EmptyIndexSet,
}

pub type Result<T> = core::result::Result<T, Error>;
