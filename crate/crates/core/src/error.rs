use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix must be non-empty")]
    EmptyMatrix,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    EntryCount {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("ragged rows: row {row} has {got} entries, expected {expected}")]
    RaggedRows { row: usize, expected: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{what} exceeds cap: {value} > {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("form is not positive definite")]
    NotPositiveDefinite,
    #[error("form is not unimodular: determinant {determinant}")]
    NotUnimodular { determinant: String },
    #[error("group is not abelian")]
    NonAbelian,
    #[error("elements belong to different structures: {0}")]
    Mismatch(String),
    #[error("invalid Cayley table: {0}")]
    InvalidCayleyTable(String),
    #[error("malformed relator {relator}: generator index {index} outside 1..={generators}")]
    MalformedRelator {
        relator: usize,
        index: i64,
        generators: usize,
    },
    #[error("integers {0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// True for errors raised by a size cap rather than by bad input.
    pub fn is_cap_exceeded(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
