use std::io;

pub type Result<T> = std::result::Result<T, HdError>;

#[derive(Debug, thiserror::Error)]
pub enum HdError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported dimension {requested} (supported: 1..={max})")]
    UnsupportedDimension { requested: usize, max: usize },

    #[error("{source_name} provides {available} distinct sequences, {requested} requested")]
    NotEnoughSequences {
        source_name: String,
        available: usize,
        requested: usize,
    },

    #[error("wrong magic: expected {expected:#010x}, found {found:#010x}")]
    WrongMagic { expected: u32, found: u32 },

    #[error("truncated input: needed {needed} bytes, got {got}")]
    Truncated { needed: usize, got: usize },

    #[error("image/label count mismatch: {images} images, {labels} labels")]
    CountMismatch { images: usize, labels: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("bad file format: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl HdError {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        HdError::InvalidParameter(msg.into())
    }
}
