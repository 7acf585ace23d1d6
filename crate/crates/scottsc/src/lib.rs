//! Semiclassical spectral asymptotics at desk scale.
//!
//! The crate bundles a small stack of numerical tools:
//!
//! - [`numerics`]: grids, smooth bumps and partitions of unity, Gaussian
//!   identities and power-law fitting.
//! - [`coherent`]: Gaussian-smeared coherent operators on a 1D grid, the
//!   operator-valued symbol representation of Schrödinger operators and
//!   positive-symbol trial density matrices.
//! - [`spectra`]: negative-eigenvalue sums of 1D and radial 3D Schrödinger
//!   operators, densities, the IMS identity and Lieb-Thirring ratios.
//! - [`thomas_fermi`]: the universal Thomas-Fermi function, atomic TF
//!   potentials and densities, Coulomb energies and scaling.
//! - [`semiclassics`]: Weyl phase-space integrals and local trace experiments.
//! - [`scott`]: hydrogen sums, the Scott term and the Scott coefficient
//!   extraction on the Thomas-Fermi potential.
//! - [`cli`]: the `scottsc` command-line front end.

pub mod cli;
pub mod coherent;
pub mod error;
pub mod numerics;
pub mod scott;
pub mod semiclassics;
pub mod spectra;
pub mod thomas_fermi;

pub use error::{Error, Result, Warning};
