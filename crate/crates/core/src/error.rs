use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// A malformed SRT block. `line` is 1-based within the source text.
    #[error("srt parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// [`Error::Parse`] attributed to a file.
    #[error("{}:{line}: {message}", path.display())]
    ParseFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// Bad invocation: nothing to ingest, empty query file and the like.
    #[error("usage: {0}")]
    Usage(String),

    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A store file that does not match its documented format.
    #[error("format error at byte {offset}: {message}")]
    Format { offset: u64, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    /// Indexed and exhaustive search disagreed; timings are not reported.
    #[error("correctness check failed: {0}")]
    Mismatch(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
