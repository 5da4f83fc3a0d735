use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported weight {weight}: the one-dimensional cusp spaces are k in {admissible:?}")]
    UnsupportedWeight {
        weight: u32,
        admissible: &'static [u32],
    },

    #[error("Deligne bound violated at p = {p}: |lambda| = {lambda:.17} > 2; coefficient data is corrupted")]
    DeligneViolation { p: u64, lambda: f64 },

    #[error("integer overflow in exact series arithmetic ({0})")]
    SeriesOverflow(String),

    #[error("numeric instability: {0}")]
    NumericInstability(String),

    #[error("insufficient coefficient cache: need coefficients up to {needed}, table holds {available}")]
    InsufficientCache { needed: usize, available: usize },

    #[error("evaluation point out of region: {0}")]
    OutOfRegion(String),

    #[error("unsupported kind: {0}")]
    UnsupportedKind(String),

    #[error("target vanishes at boundary sample {index}")]
    NonVanishingViolation { index: usize },

    #[error("log-branch step between boundary samples {index} and {next} is too large; densify the sampling", next = index + 1)]
    ResolutionError { index: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("contour violation: {0}")]
    ContourViolation(String),

    #[error("cache file {path} is corrupt: {reason}")]
    CacheCorrupt { path: PathBuf, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("serialization failed: {0}")]
    Serialize(#[from] serde_json::Error),
}

impl Error {
    pub fn invalid<S: Into<String>>(msg: S) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
