use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("odd k unsupported (got k = {0}); only even orders are defined")]
    OddOrder(u32),
    #[error("k = {0} gives a degenerate algebra; k must be at least 4")]
    OrderTooSmall(u32),
    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("deformation mismatch: k = {left} vs k = {right}")]
    DeformationMismatch { left: u32, right: u32 },
    #[error("mode count mismatch: {left} vs {right}")]
    ModeMismatch { left: usize, right: usize },
    #[error("mode index {mode} outside 1..={modes}")]
    BadMode { mode: usize, modes: usize },
    #[error("operation requires a single mode, got {0} modes")]
    SingleModeOnly(usize),
    #[error("mode count must be at least 1")]
    NoModes,
    #[error("invalid data: {0}")]
    Invalid(String),
    #[error(transparent)]
    Json(#[from] JsonError),
}

/// Wrapper so `Error` can stay `Clone + PartialEq`.
#[derive(Debug, Error, Clone, PartialEq)]
#[error("json: {0}")]
pub struct JsonError(pub String);

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(JsonError(e.to_string()))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
