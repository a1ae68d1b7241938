use std::io;
use std::path::PathBuf;

use crate::graph::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("stream window is empty")]
    EmptyWindow,

    #[error("vertex {0} is not in the stream window")]
    NotInWindow(VertexId),

    #[error("vertex {0} is already assigned")]
    AlreadyAssigned(VertexId),

    #[error("partition index {index} out of range for k={k}")]
    PartitionIndex { index: usize, k: usize },

    #[error("every partition is at capacity {capacity}")]
    CapacityExhausted { capacity: u64 },

    #[error("vertex {0} has no partition assignment")]
    IncompleteAssignment(VertexId),

    #[error("metadata format error at byte {offset} (line {line}): {message}")]
    Format {
        offset: usize,
        line: usize,
        message: String,
    },

    #[error("load vector is empty")]
    EmptyLoads,

    #[error("integrity check failed for {name}: expected sha256 {expected}, got {actual}")]
    Integrity {
        name: String,
        expected: String,
        actual: String,
    },

    #[error("dataset {name} is not cached and offline mode is set")]
    Unavailable { name: String },

    #[error("download of {url} failed: {message}")]
    Download { url: String, message: String },

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// True for errors caused by bad input data rather than bad usage.
    pub fn is_data_error(&self) -> bool {
        match self {
            Error::Config(_) => false,
            Error::File { source, .. } => source.is_data_error(),
            _ => true,
        }
    }
}
