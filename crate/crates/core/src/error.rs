use thiserror::Error;

use crate::board::Position;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("board size must be an odd integer >= {min}, got {n}")]
    InvalidSize { n: usize, min: usize },

    #[error("position {pos} is outside a board of size {n}")]
    OutOfRange { pos: Position, n: usize },

    #[error("a position cannot direct to itself: {0}")]
    SamePosition(Position),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid game at move {index}: {message}")]
    InvalidGame { index: usize, message: String },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("construction failed: {0}")]
    ConstructionFailed(String),

    #[error("search budget of {budget} steps exhausted")]
    BudgetExhausted { budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_size(n: usize, min: usize) -> Result<()> {
    if n < min || n.is_multiple_of(2) {
        Err(Error::InvalidSize { n, min })
    } else {
        Ok(())
    }
}

pub(crate) fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}
