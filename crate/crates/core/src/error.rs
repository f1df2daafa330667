use std::path::PathBuf;

/// Errors produced by the kernels, construction routines and file formats.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("integration did not converge: {0}")]
    Integration(String),

    #[error("no design SNR in [{lo_db}, {hi_db}] dB reaches the target band")]
    NoDesignSnr { lo_db: f64, hi_db: f64 },

    #[error("malformed file {path}: {detail}")]
    Format { path: PathBuf, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
