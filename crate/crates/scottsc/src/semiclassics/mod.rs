//! Weyl phase-space integrals and local trace experiments.

mod local;
mod weyl;

pub use local::{local_trace_experiment, smooth_well, LocalTraceExperiment, DEFAULT_POINTS_PER_H, LOCAL_TRACE_EXPONENT};
pub use weyl::{omega, weyl_density, weyl_energy, WeylSpec};
