//! Shared numerical substrate.

mod bump;
mod fit;
mod gaussian;
mod grid;
mod partition;
pub mod quadrature;
mod step;
mod taylor;

pub use bump::{make_bump, Bump};
pub use fit::{fit_power_series, FitResult};
pub use gaussian::gaussian_weight_g_b;
pub use grid::{Grid1D, GridKind};
pub use partition::{make_partition, PartitionPair};
pub use taylor::Taylor;
