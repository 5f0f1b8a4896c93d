use thiserror::Error;

/// Crate-wide error type. Variants mirror the distinct failure modes of the
/// laboratory: bad parameters, solver divergence, spectral anomalies, and the
/// breakdown conditions of the modulation and Fredholm machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("solver did not converge: {0}")]
    Convergence(String),

    #[error("no soliton projection found: {0}")]
    NoProjection(String),

    #[error("spectral anomaly: {0}")]
    SpectralAnomaly(String),

    #[error("modulation breakdown: {0}")]
    ModulationBreakdown(String),

    #[error("near-singular Fredholm operator: {0}")]
    NearSingular(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

pub type Result<T> = std::result::Result<T, Error>;
