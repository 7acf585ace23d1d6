//! Hydrogen sums, the Scott term and the Scott coefficient experiment.

mod assembly;
mod experiment;
mod hydrogen;

pub use assembly::{molecular_energy_assembly, MolecularAssembly};
pub use experiment::{
    scott_experiment_coulomb, scott_experiment_tf, tf_weyl_energy, ScottConfig, ScottExperiment, SCOTT_FIT_EXPONENTS,
};
pub use hydrogen::{
    hydrogen_exact_sum, hydrogen_exact_sum_rational, hydrogen_expansion_check, scott_term, HydrogenExpansion, Rational,
};
