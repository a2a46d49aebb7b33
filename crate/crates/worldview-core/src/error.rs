//! Crate-wide error type and result alias.

use std::path::PathBuf;

/// Errors produced while loading inputs or running the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A file could not be read at all.
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A corpus or resource record failed to parse.
    #[error("{path}:{line}: malformed record: {message}")]
    Malformed {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// Two corpus records share an id.
    #[error("{path}:{line}: duplicate tweet id {id:?}")]
    DuplicateId {
        path: PathBuf,
        line: usize,
        id: String,
    },

    /// The WordNet directory is missing required database files.
    #[error("wordnet directory {dir} is missing files: {missing}", missing = .missing.join(", "))]
    WordnetMissing { dir: PathBuf, missing: Vec<String> },

    /// A WordNet database line failed to parse.
    #[error("{path}:{line}: malformed wordnet entry: {message}")]
    WordnetParse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// The loaded WordNet database violates a structural invariant.
    #[error("inconsistent wordnet database: {0}")]
    WordnetInconsistent(String),

    /// A configuration value (CLI flag or config file) is invalid.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// The evaluation corpus has no usable gold labels.
    #[error("gold labels required: {missing} of {total} tweets are unlabeled")]
    MissingLabels { missing: usize, total: usize },

    /// The corpus is empty where a nonempty one is required.
    #[error("corpus is empty")]
    EmptyCorpus,

    /// k-means cluster count outside the valid range.
    #[error("k={k} out of range 1..={max}")]
    KOutOfRange { k: usize, max: usize },

    /// Every world view consists solely of retweets, so relative sizes are
    /// undefined (division-by-zero guard in trust scoring).
    #[error("trust scoring needs at least one non-retweet member across views")]
    EmptyAfterRetweetExclusion,

    /// Internal consistency failure (a bug, not a user error).
    #[error("internal error: {0}")]
    Internal(String),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Wrap an I/O failure with the path that produced it.
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
