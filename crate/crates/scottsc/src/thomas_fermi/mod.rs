//! Thomas-Fermi theory: the universal function, neutral atoms, scaling and geometry helpers.

mod atomic;
mod coulomb;
mod geometry;
mod scaling;
mod universal;

pub use atomic::{
    atomic_tf, default_tf_grid, tf_density_from_potential, tf_equation_constant, tf_kinetic_constant,
    tf_length_scale, TfSolution,
};
pub use coulomb::coulomb_energy_d;
pub use geometry::{geometry_functions, Geometry, NucleiConfig};
pub use scaling::tf_scaling_transform;
pub use universal::{shoot_initial_slope, solve_universal_tf, universal_tf, UniversalTf};
