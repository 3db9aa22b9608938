use std::io;
use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("line {line}: invalid UTF-8")]
    Decode { line: usize },

    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("line {line}: {msg}")]
    Validation { line: usize, msg: String },

    #[error("{0}")]
    Argument(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("checksum mismatch: {0}")]
    Checksum(String),

    #[error("unsupported model version: {0}")]
    Version(String),

    #[error("alignment mismatch: {0}")]
    Alignment(String),

    #[error("config: {0}")]
    Config(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn format(line: usize, msg: impl Into<String>) -> Self {
        Error::Format {
            line,
            msg: msg.into(),
        }
    }

    pub fn validation(line: usize, msg: impl Into<String>) -> Self {
        Error::Validation {
            line,
            msg: msg.into(),
        }
    }
}
