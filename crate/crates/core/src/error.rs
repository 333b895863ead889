//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("no score supplied for evidence {0}")]
    MissingScore(u32),

    #[error("no anchor group matched the question")]
    NoAnchors,

    #[error("anchor groups {0:?} are disconnected from the rest")]
    DisconnectedGroups(Vec<usize>),

    #[error("group count {got} exceeds the solver cap {cap}")]
    GroupCapExceeded { got: usize, cap: usize },

    #[error("instance too large for exhaustive search: {0} nodes")]
    InstanceTooLarge(usize),

    #[error("no answer candidates in any tree")]
    NoCandidates,

    #[error("configuration error: {0}")]
    Config(String),

    #[error("graph is frozen")]
    Frozen,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
