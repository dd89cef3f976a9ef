use thiserror::Error;

/// Errors raised by ingestion, configuration and computation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("numeric overflow in fast mode ({0}); rerun with --mode exact")]
    Overflow(&'static str),

    #[error("walk enumeration exceeded the cap of {cap} walks")]
    WalkCapExceeded { cap: usize },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("worker failed: {0}")]
    Worker(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
