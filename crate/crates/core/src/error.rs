use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("conflicting metadata for id `{id}`")]
    MetaConflict { id: String },

    #[error("publication index {index} out of range (graph has {len} publications)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("publication {citer} does not cite publication {focal}")]
    NotACiter { focal: usize, citer: usize },

    #[error("no defined values")]
    NoDefinedValues,

    #[error("undefined value in input and skipping was not requested")]
    UndefinedValue,

    #[error("unknown indicator `{0}`")]
    UnknownIndicator(String),

    #[error("unknown publication `{0}`")]
    UnknownPublication(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
