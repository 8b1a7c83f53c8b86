use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector norm {0:e} is too small to normalize")]
    ZeroVector(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("state dimension must be at least 2 (got {0})")]
    DimensionTooSmall(usize),

    #[error("geodesic endpoints are orthogonal (|overlap| = {0:e})")]
    OrthogonalEndpoints(f64),

    #[error("orthogonal states: Pancharatnam connection undefined (|overlap| = {0:e})")]
    OrthogonalStates(f64),

    #[error("orthogonal step at index {index}: |overlap| = {magnitude:e}")]
    OrthogonalStep { index: usize, magnitude: f64 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("path needs at least 2 states (got {0})")]
    PathTooShort(usize),

    #[error("path has no timestamps")]
    MissingTimestamps,

    #[error("timestamps not strictly increasing at index {0}")]
    NonMonotoneTimestamps(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("invalid config `{key}`: {reason}")]
    InvalidConfig { key: &'static str, reason: String },

    #[error("grid too coarse: sampled norm deviates from 1 by {0:e}")]
    GridTooCoarse(f64),

    #[error("angular basis mismatch: order {0} vs {1}")]
    BasisMismatch(usize, usize),

    #[error("energy model supports exactly one junction (got {0})")]
    UnsupportedTopology(usize),

    #[error("screening parameter must exceed 1 (got {0})")]
    InvalidBeta(f64),
}

impl Error {
    pub(crate) fn config(key: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidConfig { key, reason: reason.into() }
    }

    /// True for errors caused by invalid inputs rather than numerical singularities.
    pub fn is_config_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidConfig { .. }
                | Error::InvalidBeta(_)
                | Error::LengthMismatch { .. }
                | Error::DimensionMismatch { .. }
                | Error::DimensionTooSmall(_)
                | Error::PathTooShort(_)
                | Error::MissingTimestamps
                | Error::NonMonotoneTimestamps(_)
                | Error::NonFinite(_)
                | Error::BasisMismatch(..)
                | Error::UnsupportedTopology(_)
        )
    }
}
