use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("cell ({row}, {col}) is not in the diagram")]
    CellOutOfShape { row: usize, col: usize },

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("enumeration cap exceeded: {count} tableaux > cap {cap}")]
    EnumerationCap { count: String, cap: u64 },

    #[error("polynomial division left a nonzero remainder")]
    NonExactDivision,

    #[error("descent function: {0}")]
    InvalidDescentFunction(String),

    #[error("descent function is not rational-valued; use float arithmetic")]
    NonRationalFunction,

    #[error("index out of range: {0}")]
    IndexRange(String),

    #[error("expectation is zero; relative tail bound undefined")]
    ZeroExpectation,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors that can only come from a bug in this crate rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_) | Error::NonExactDivision)
    }
}
