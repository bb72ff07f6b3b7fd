use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// Malformed image or container text; `field` names the offending part.
    #[error("format error in {field}: {reason}")]
    Format { field: &'static str, reason: String },

    #[error("load error at view (row {row}, col {col}): {reason}")]
    Load { row: usize, col: usize, reason: String },

    #[error("manifest error: {0}")]
    Manifest(String),

    #[error("numeric error: {0}")]
    Numeric(String),

    #[error("parameter error: {0}")]
    Param(String),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("bitstream error at bit {offset}: {reason}")]
    Bitstream { offset: u64, reason: String },

    /// Failure inside one sweep point, tagged with the point that failed.
    #[error("{mode} q{quality}: {source}")]
    Sweep {
        mode: String,
        quality: u8,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub(crate) fn format(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Format { field, reason: reason.into() }
    }

    pub(crate) fn bitstream(offset: u64, reason: impl Into<String>) -> Self {
        Error::Bitstream { offset, reason: reason.into() }
    }
}
