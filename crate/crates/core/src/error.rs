use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("size cap exceeded: {what} is {actual}, cap is {cap}")]
    CapExceeded { what: &'static str, actual: usize, cap: usize },

    #[error("degenerate column partition {partition:?}: denominator {denominator} is not positive")]
    DegeneratePartition { partition: Vec<usize>, denominator: i64 },

    #[error("rank precondition failed: rank {rank} but {rows} rows")]
    NotFullRank { rank: usize, rows: usize },

    #[error("no associated pair validated after examining {candidates} candidates")]
    AssociatedPairNotFound { candidates: usize },

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("{0} is not divisible by gcd {1}")]
    Divisibility(String, String),

    #[error("pairing insufficient: chain {0:?} lies wholly on the board")]
    ChainOnBoard(Vec<u32>),

    #[error("illegal move {vertex}: {reason}")]
    IllegalMove { vertex: u32, reason: &'static str },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("degenerate data: {0}")]
    DegenerateData(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
