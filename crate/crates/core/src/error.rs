use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("truncation mismatch: {0} vs {1}")]
    Truncation(usize, usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    #[error("missing filler: {0}")]
    MissingFiller(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;
