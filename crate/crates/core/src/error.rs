use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot decode image {path}: {reason}")]
    ImageDecode { path: PathBuf, reason: String },

    #[error("image has a zero dimension ({width}x{height})")]
    EmptyImage { width: u32, height: u32 },

    #[error("{width}x{height} raster cannot be split into a {rows}x{cols} partition grid")]
    Partition {
        width: usize,
        height: usize,
        rows: usize,
        cols: usize,
    },

    #[error("invalid filter kernel: {0}")]
    Kernel(String),

    #[error("inadmissible pseudo-Zernike order/repetition (n={order}, m={repetition})")]
    Moment { order: u32, repetition: i32 },

    #[error("empty dataset: {0}")]
    EmptyDataset(String),

    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("feature combination {combo} {reason}")]
    ComboMismatch { combo: String, reason: String },

    #[error("unknown label {0}")]
    Label(String),

    #[error("corpus layout: {0}")]
    CorpusLayout(String),

    #[error("cannot split: {0}")]
    Split(String),

    #[error("invalid config value for `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("malformed file {path}: {reason}")]
    Format { path: PathBuf, reason: String },

    #[error("{path}: {source}")]
    AtPath {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    /// Attach the offending file to an error.
    pub fn at(self, path: impl Into<PathBuf>) -> Self {
        Error::AtPath {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Short machine-readable category, used by the CLI error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ImageDecode { .. } => "image_decode",
            Error::EmptyImage { .. } => "empty_image",
            Error::Partition { .. } => "partition",
            Error::Kernel(_) => "kernel",
            Error::Moment { .. } => "moment",
            Error::EmptyDataset(_) => "empty_dataset",
            Error::ShapeMismatch { .. } => "shape_mismatch",
            Error::ComboMismatch { .. } => "combo_mismatch",
            Error::Label(_) => "label",
            Error::CorpusLayout(_) => "corpus_layout",
            Error::Split(_) => "split",
            Error::Config { .. } => "config",
            Error::Format { .. } => "format",
            Error::AtPath { source, .. } => source.kind(),
            Error::Io(_) => "io",
        }
    }

    /// Strips any path context.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtPath { source, .. } => source.root(),
            other => other,
        }
    }
}
