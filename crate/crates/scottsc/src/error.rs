use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("solver failure: {0}")]
    SolverFailure(String),
    #[error("channel cutoff violated: sentinel channel l={l} has {count} negative eigenvalues")]
    ChannelCutoff { l: usize, count: usize },
    #[error("box too small: eigenfunction mass {mass:.3e} near r_max={r_max} in channel l={l}")]
    BoxSize { l: usize, r_max: f64, mass: f64 },
    #[error("calibration failure: {0}")]
    Calibration(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

/// Non-fatal diagnostic attached to a numerical result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// Relative change between the two finest refinements exceeded the tolerance.
    Accuracy { context: String, relative_change: f64, tolerance: f64 },
    /// Phase-space quadrature too coarse or too narrow for the Gaussian scale.
    UnderResolved { context: String, detail: String },
    /// Fit design spans too small a range of h.
    FitConditioning { context: String, h_ratio: f64 },
    /// Quantity assembled from a sum-of-atoms approximation.
    SumOfAtoms { context: String },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::Accuracy { context, relative_change, tolerance } => write!(
                f,
                "{context}: refinement change {relative_change:.3e} exceeds {tolerance:.1e}"
            ),
            Warning::UnderResolved { context, detail } => write!(f, "{context}: under-resolved ({detail})"),
            Warning::FitConditioning { context, h_ratio } => {
                write!(f, "{context}: h range spans only a factor {h_ratio:.3}")
            }
            Warning::SumOfAtoms { context } => write!(f, "{context}: sum-of-atoms approximation"),
        }
    }
}
