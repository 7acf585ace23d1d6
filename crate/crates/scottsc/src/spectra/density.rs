use nalgebra::{Complex, DMatrix};

use crate::error::{Error, Result};
use crate::numerics::{Grid1D, GridKind};

/// Density matrix as an operator matrix on a uniform grid.
///
/// Grid functions carry the inner product `Σ conj(ψ_i) φ_i dx`, so the matrix
/// acts as `(γψ)_i = Σ_j γ_ij ψ_j` and `Tr γ = Σ γ_ii`.
#[derive(Debug, Clone)]
pub struct DensityMatrixGrid {
    pub matrix: DMatrix<Complex<f64>>,
    pub grid: Grid1D,
    pub h: f64,
}

impl DensityMatrixGrid {
    pub fn new(matrix: DMatrix<Complex<f64>>, grid: Grid1D, h: f64) -> Result<Self> {
        if grid.kind() != GridKind::Uniform {
            return Err(Error::invalid("density matrices live on uniform grids"));
        }
        if matrix.nrows() != grid.len() || matrix.ncols() != grid.len() {
            return Err(Error::invalid("matrix size does not match the grid"));
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let asym = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > 1e-12 * scale {
            return Err(Error::invalid(format!("density matrix not Hermitian (defect {asym:.2e})")));
        }
        Ok(DensityMatrixGrid { matrix, grid, h })
    }

    /// Rank-one projection onto a grid function normalized in `Σ|ψ|²dx`.
    pub fn pure_state(psi: &[Complex<f64>], grid: Grid1D, h: f64) -> Result<Self> {
        let dx = grid.spacing();
        let n = psi.len();
        let m = DMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() * dx);
        DensityMatrixGrid::new(m, grid, h)
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().cloned().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    /// Whether the spectrum lies in `[-tol, 1 + tol]`.
    pub fn is_admissible(&self, tol: f64) -> bool {
        let ev = self.eigenvalues();
        ev.first().is_none_or(|&l| l >= -tol) && ev.last().is_none_or(|&l| l <= 1.0 + tol)
    }
}

/// Density `ρ_γ` with `Σ ρ_γ θ dx = Tr(γΘ)` for multiplication operators `Θ`.
pub fn density_of(gamma: &DensityMatrixGrid) -> Vec<f64> {
    let dx = gamma.grid.spacing();
    gamma.matrix.diagonal().iter().map(|z| z.re / dx).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian(grid: &Grid1D) -> Vec<Complex<f64>> {
        let dx = grid.spacing();
        let raw: Vec<f64> = grid.points().iter().map(|x| (-x * x / 0.5).exp()).collect();
        let norm = (raw.iter().map(|v| v * v).sum::<f64>() * dx).sqrt();
        raw.iter().map(|v| Complex::new(v / norm, 0.0)).collect()
    }

    #[test]
    fn pure_state_density() {
        let g = Grid1D::uniform(-5.0, 5.0, 201).unwrap();
        let psi = gaussian(&g);
        let gam = DensityMatrixGrid::pure_state(&psi, g.clone(), 0.1).unwrap();
        let rho = density_of(&gam);
        for (r, p) in rho.iter().zip(&psi) {
            assert!((r - p.norm_sqr()).abs() < 1e-12);
        }
        let total: f64 = rho.iter().sum::<f64>() * g.spacing();
        assert!((total - 1.0).abs() < 1e-10);
        assert!(gam.is_admissible(1e-10));
    }

    #[test]
    fn zero_matrix() {
        let g = Grid1D::uniform(0.0, 1.0, 10).unwrap();
        let gam = DensityMatrixGrid::new(DMatrix::zeros(10, 10), g, 0.1).unwrap();
        assert!(density_of(&gam).iter().all(|&r| r == 0.0));
    }

    #[test]
    fn non_hermitian_rejected() {
        let g = Grid1D::uniform(0.0, 1.0, 8).unwrap();
        let mut m = DMatrix::zeros(8, 8);
        m[(0, 1)] = Complex::new(1.0, 0.0);
        assert!(DensityMatrixGrid::new(m, g, 0.1).is_err());
    }
}
