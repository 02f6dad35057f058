use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid resolution must be a power of two >= 8, got n = {0}")]
    BadResolution(usize),

    #[error("grid dimension must be 1, 2 or 3, got {0}")]
    BadDimension(usize),

    #[error("half period must be positive, got {0}")]
    BadPeriod(f64),

    #[error("grid has {points} points, exceeding the configured cap {cap}")]
    PointCapExceeded { points: usize, cap: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("dense strategy needs n^dim <= {cap}, grid has {points} points; use the chebyshev strategy")]
    DenseCapExceeded { points: usize, cap: usize },

    #[error("chebyshev degree {degree} too small: tail coefficient {tail:.3e} exceeds {tol:.3e}; increase K")]
    IncreaseDegree { degree: usize, tail: f64, tol: f64 },

    #[error("{0} is only defined on 3d grids")]
    ThreeDimOnly(&'static str),

    #[error("scaling factor must be a dyadic integer 2^j with j >= 0, got {0}")]
    NonDyadicScale(f64),

    #[error("{frac:.2}% of modes fall below the spectral clamp (limit 1%); hypotheses violated")]
    ClampExcess { frac: f64 },

    #[error("probe set is empty")]
    EmptyProbeSet,

    #[error("NaN detected at step {step}")]
    NanDetected { step: usize },

    #[error("invalid configuration: {0}")]
    Validation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("snapshot format error: {0}")]
    SnapshotFormat(String),

    #[error("linear algebra backend error: {0}")]
    Linalg(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}
