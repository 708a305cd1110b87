use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("window exhausted: {0}")]
    WindowExhausted(String),
    #[error("oracle budget exceeded: m+n = {got}, limit {limit}")]
    Budget { got: usize, limit: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
