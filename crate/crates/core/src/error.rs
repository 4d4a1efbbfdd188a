//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// The file is not valid UTF-8; `offset` is the position of the first
    /// offending byte.
    #[error("invalid utf-8 in {}: error at byte offset {offset}", path.display())]
    Decode { path: PathBuf, offset: usize },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("stop-word list not found: {id}")]
    StopwordsMissing { id: String },

    #[error("n-gram order must be at least 1")]
    InvalidOrder,

    #[error("n-gram order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("{}: line {line}: {message}", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate document id {id:?}")]
    DuplicateDocId { id: String },

    #[error("unknown document id {0:?}")]
    UnknownDoc(String),

    #[error("empty input: {0}")]
    EmptyInput(String),
}

impl Error {
    /// True for errors that indicate a caller mistake (bad order, mismatched
    /// vectors) rather than a runtime failure. The CLI maps these to exit
    /// code 2, everything else to 1.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::InvalidOrder | Error::OrderMismatch { .. })
    }
}
