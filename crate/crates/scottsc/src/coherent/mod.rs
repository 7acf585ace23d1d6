//! Coherent states on the line: the Gaussian projections, the operators `𝒢_{u,q}`,
//! operator-valued symbols, the representation of Schrödinger operators and
//! positive-symbol trial densities.

mod lattice;
mod operator;
mod params;
mod representation;
mod resolution;
mod states;
mod symbol;
mod trial;

pub use lattice::{periodic_grid, C64};
pub use operator::GridOperator;
pub use params::{ARule, CoherentParams, PhasePoint};
pub use representation::{representation_error_norm, representation_grid, representation_margin, RepresentationReport};
pub use resolution::{resolution_of_identity_check, PhaseQuadrature, QNodes, ResolutionReport};
pub use states::{new_kernel_g, old_state_wavefunction, weight_w};
pub use symbol::{gaussian_cancellation, operator_symbol, ClassicalSymbol, Jet, JetFn, OperatorSymbol};
pub use trial::{trial_density_matrix, trial_grid, trial_summary, TrialDensity, TrialSummary};
