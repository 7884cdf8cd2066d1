use thiserror::Error;

/// Errors produced by spec validation, classification and the solver pipeline.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid problem: {0}")]
    InvalidSpec(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("projected exponents {first} and {second} coincide within tolerance")]
    DuplicateExponent { first: usize, second: usize },
    #[error("grid too small: exponent {exponent:?} lies outside the index set of G = {nodes:?}")]
    GridTooSmall { exponent: Vec<i64>, nodes: Vec<i64> },
    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),
    #[error("numerical failure: {0}")]
    Singular(String),
    #[error("empty range: {0}")]
    EmptyRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code the CLI maps this error to.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidSpec(_)
            | Error::InvalidGrid(_)
            | Error::DuplicateExponent { .. }
            | Error::EmptyRange(_)
            | Error::InvalidParameter(_) => 1,
            Error::GridTooSmall { .. } | Error::Inadmissible(_) => 2,
            Error::Singular(_) => 3,
        }
    }
}
