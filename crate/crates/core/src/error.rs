use thiserror::Error;

/// Errors raised by the summarization engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{0}")]
    Domain(String),

    #[error("invalid summary: subnode pair ({u}, {v}) has net count {net}")]
    InvalidSummary { u: u32, v: u32, net: i32 },

    #[error("summary format: {0}")]
    Format(String),

    #[error("encoder: {0}")]
    Encoding(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
