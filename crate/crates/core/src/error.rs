use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("presentation mismatch: {0}")]
    PresentationMismatch(String),
    /// A solver or construction step found an inconsistency; this signals a bug.
    #[error("verification error: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;
