use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("invalid vertex: {0}")]
    InvalidVertex(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("invalid construction parts: {0}")]
    InvalidParts(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("binomial coefficient C({n}, {k}) overflows u64")]
    Overflow { n: u32, k: u32 },

    #[error("instance too large: {what} = {size} exceeds cap {cap}")]
    TooLarge { what: &'static str, size: u64, cap: u64 },

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
