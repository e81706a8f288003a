use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the optimizer, benchmark suite and experiment runner.
#[derive(Debug, Error)]
pub enum Error {
    /// A function was called with arguments that violate its contract
    /// (length mismatch, out-of-bounds decision, empty input, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// An experiment or run configuration is invalid.
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_same_len(a: &[f64], b: &[f64]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::usage(format!(
            "objective vectors differ in length ({} vs {})",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}
