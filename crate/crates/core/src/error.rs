use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}, field {field}: {message}")]
    Parse {
        line: usize,
        field: usize,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("no instances")]
    NoInstances,

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("undefined metric: {0}")]
    Undefined(String),

    #[error("malformed {kind} at line {line}: {message}")]
    Format {
        kind: &'static str,
        line: usize,
        message: String,
    },

    #[error("fold {fold}: {source}")]
    Fold {
        fold: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("download failed: {0}")]
    Fetch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(kind: &'static str, line: usize, message: impl Into<String>) -> Self {
        Error::Format {
            kind,
            line,
            message: message.into(),
        }
    }
}
