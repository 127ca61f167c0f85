use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a permutation: {0}")]
    InvalidPermutation(String),

    #[error("entry {index} of inversion table is {value}, exceeds bound {bound}")]
    NotSubdiagonal {
        index: usize,
        value: usize,
        bound: usize,
    },

    #[error("invalid pattern set: {0}")]
    InvalidPatternSet(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("invalid fountain: {0}")]
    InvalidFountain(String),

    #[error("coin set is not a fountain: diagonal {diagonal} {reason}")]
    NotAFountain { diagonal: usize, reason: String },

    #[error("invalid parallelogram polyomino: {0}")]
    InvalidPolyomino(String),

    #[error("input outside the domain of the map: {0}")]
    OutsideDomain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("b-file line {line}: {reason}")]
    BFile { line: usize, reason: String },

    #[error("cache error: {0}")]
    Cache(String),

    #[error("fetch error: {0}")]
    Fetch(String),
}
