use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("chart mismatch: {0} vs {1}")]
    ChartMismatch(u32, u32),
    #[error("unknown generator index {0}")]
    UnknownIndex(usize),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("no exact square root: {0}")]
    NoExactSquareRoot(String),
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),
    #[error("singular odd-odd block in Berezinian")]
    SingularBlock,
    #[error("phase-space kind mismatch: {0}")]
    KindMismatch(String),
    #[error("flow does not terminate: {0}")]
    NonTerminating(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("{msg} at line {line}, column {column}")]
    Parse { line: usize, column: usize, msg: String },
}
