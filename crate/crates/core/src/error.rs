use thiserror::Error;

/// Errors surfaced by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid: {0}")]
    Invalid(String),
    #[error("planarity: {0}")]
    Planarity(String),
    #[error("leg-count: {0}")]
    LegCount(String),
    #[error("alphabet: {0}")]
    Alphabet(String),
    #[error("boundary mismatch: {0}")]
    Boundary(String),
    #[error("theory mismatch: {0}")]
    TheoryMismatch(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

impl Error {
    /// Whether this error reflects a broken engine invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
