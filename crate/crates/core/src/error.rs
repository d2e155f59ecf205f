use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by dataset construction, solvers, and loaders.
#[derive(Debug, Error)]
pub enum Error {
    #[error("class {class} has no samples")]
    EmptyClass { class: usize },

    #[error("{context}: expected length {expected}, got {actual}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("label {label} at column {column} outside 1..={class_count}")]
    LabelOutOfRange {
        label: usize,
        column: usize,
        class_count: usize,
    },

    #[error("non-finite value at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },

    #[error("factorization failed at entry ({row}, {column})")]
    Factorization { row: usize, column: usize },

    #[error("invalid hyperparameter: {0}")]
    InvalidHyperparam(String),

    #[error("class index {class} out of range 1..={class_count}")]
    ClassIndexOutOfRange { class: usize, class_count: usize },

    #[error("no class representable: every residual is infinite")]
    NoRepresentableClass,

    #[error("class {class} has {available} samples, needs more than {requested}")]
    SplitTooSmall {
        class: usize,
        available: usize,
        requested: usize,
    },

    #[error("test sample {index}: {source}")]
    Sample {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("{path}: parse error at row {row}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        row: usize,
        column: usize,
        message: String,
    },

    #[error("{path}: format error at offset {offset}: {message}")]
    Format {
        path: PathBuf,
        offset: u64,
        message: String,
    },

    #[error("failed to read {path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn at_sample(self, index: usize) -> Error {
        Error::Sample {
            index,
            source: Box::new(self),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
