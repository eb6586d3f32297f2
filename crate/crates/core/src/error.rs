use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("series too short: length {length}, need at least {minimum}")]
    SeriesTooShort { length: usize, minimum: usize },

    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("ragged dataset: series {index} has length {actual}, expected {expected}")]
    RaggedSeries { index: usize, expected: usize, actual: usize },

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("{series} series but {labels} labels")]
    LabelCountMismatch { series: usize, labels: usize },

    #[error("label {label} out of range for {num_classes} classes")]
    LabelOutOfRange { label: usize, num_classes: usize },

    #[error("class {class} ({name}) has no examples")]
    MissingClass { class: usize, name: String },

    #[error("invalid kernel weights {0:?}: need six -1 and three 2")]
    InvalidKernel([i8; 9]),

    #[error("kernel {kernel} at dilation {dilation} needs length >= {required} without padding, got {length}")]
    InsufficientLength { kernel: usize, dilation: usize, required: usize, length: usize },

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("need at least two classes, got {0}")]
    TooFewClasses(usize),

    #[error("feature matrix has {actual} columns, model expects {expected}")]
    FeatureMismatch { expected: usize, actual: usize },

    #[error("non-finite feature at row {row}, column {col}")]
    NonFiniteFeature { row: usize, col: usize },

    #[error("{path}:{line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },

    #[error("class {0:?} present in test set but not in train set")]
    UnknownClass(String),

    #[error("unsupported model format: {0}")]
    ModelFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
