//! Discretized Schrödinger operators and their negative-eigenvalue sums.

mod density;
mod ims;
mod line;
mod lt;
mod radial;
pub mod tridiag;

pub use density::{density_of, DensityMatrixGrid};
pub use ims::{ims_identity_check, ims_residual, ImsReport};
pub use line::{line_operator, neg_sum_1d, LineOperator, NegativeSum};
pub use lt::{lieb_thirring_ratio, LtPotential};
pub use radial::{
    auto_box_radius, neg_sum_radial, ChannelSelection, ChannelSpectrum, RadialFn, RadialGrid, RadialProblem,
    RadialSpectrum,
};
pub use tridiag::SymTridiagonal;

use serde::{Deserialize, Serialize};

/// Relative change tolerated between the two finest refinements.
pub const DEFAULT_REFINEMENT_TOLERANCE: f64 = 2e-3;

/// Outcome of one semiclassical trace comparison at a single `h`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceResult {
    pub h: f64,
    pub quantum_sum: f64,
    pub weyl_sum: f64,
    pub scott_term: f64,
    /// `quantum_sum - weyl_sum - scott_term`.
    pub residual: f64,
    pub warnings: Vec<crate::Warning>,
}

impl TraceResult {
    pub fn new(h: f64, quantum_sum: f64, weyl_sum: f64, scott_term: f64, warnings: Vec<crate::Warning>) -> Self {
        TraceResult { h, quantum_sum, weyl_sum, scott_term, residual: quantum_sum - weyl_sum - scott_term, warnings }
    }
}
