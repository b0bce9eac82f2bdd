use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank error: {0}")]
    Rank(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("entry {entry} out of range 1..={max}")]
    Range { entry: u32, max: u32 },
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
