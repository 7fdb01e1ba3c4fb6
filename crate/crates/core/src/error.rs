use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("row subset must be nonempty")]
    EmptySubset,

    #[error("row subset must be a nonempty proper subset of the rows")]
    TrivialSubset,

    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("not a permutation of 0..{0}")]
    InvalidPermutation(usize),

    #[error("row {0} is not a 0/1 row")]
    NotZeroOne(usize),

    #[error("special row {0} is constant")]
    ConstantSpecialRow(usize),

    #[error("negative slack {value} for point {point} and inequality {inequality}")]
    NegativeSlack {
        point: usize,
        inequality: usize,
        value: String,
    },

    #[error("normalization removed every row or column")]
    Degenerate,

    #[error("row subset does not induce a 1-product")]
    NotIndependent,

    #[error("k = {k} out of range for d = {d}")]
    KOutOfRange { d: usize, k: usize },

    #[error("invalid matroid operation: {0}")]
    Matroid(String),

    #[error("expression error: {0}")]
    Expr(String),

    #[error("no coherent special rows for glue element {0}")]
    MissingCoherentRow(u32),

    #[error("input violates recognizer precondition: {0}")]
    Precondition(String),

    #[error("guard exceeded: {what} = {value} (limit {limit})")]
    GuardExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
