use nalgebra::{Complex, DMatrix};

use super::lattice::{hermitize, Lattice};
use super::symbol::ClassicalSymbol;
use crate::error::{Error, Result};
use crate::numerics::Grid1D;
use crate::spectra::DensityMatrixGrid;

/// Hermitian operator matrix on a uniform grid.
#[derive(Debug, Clone)]
pub struct GridOperator {
    pub matrix: DMatrix<Complex<f64>>,
    pub grid: Grid1D,
    pub h: f64,
}

impl GridOperator {
    pub fn new(matrix: DMatrix<Complex<f64>>, grid: Grid1D, h: f64) -> Result<Self> {
        let n = grid.len();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::invalid("operator size does not match the grid"));
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let defect = (&matrix - matrix.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > 1e-12 * scale {
            return Err(Error::invalid(format!("operator not Hermitian (defect {defect:.2e})")));
        }
        Ok(GridOperator { matrix: hermitize(matrix), grid, h })
    }

    /// `F(-ih∂) + V(x)` with the momentum part as a periodic Fourier multiplier.
    pub fn schrodinger(sym: &ClassicalSymbol, grid: &Grid1D, h: f64) -> Result<Self> {
        let lat = Lattice::new(grid, h)?;
        let mut m = lat.multiplier_real(|q| sym.f_jet(q)[0]);
        for (i, &x) in lat.x.iter().enumerate() {
            m[(i, i)] += Complex::from(sym.v_jet(x)[0]);
        }
        GridOperator::new(m, grid.clone(), h)
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self.matrix.clone().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(|a, b| a.total_cmp(b));
        ev
    }

    pub fn spectral_norm(&self) -> f64 {
        self.eigenvalues().iter().fold(0.0, |m, &l| m.max(l.abs()))
    }

    /// `Σ` of negative eigenvalues.
    pub fn negative_trace(&self) -> f64 {
        self.eigenvalues().iter().filter(|&&l| l < 0.0).sum()
    }

    /// `Re Tr(self · other)`.
    pub fn trace_product(&self, other: &GridOperator) -> f64 {
        self.matrix.component_mul(&other.matrix.transpose()).iter().map(|z| z.re).sum()
    }

    pub fn into_density_matrix(self) -> Result<DensityMatrixGrid> {
        DensityMatrixGrid::new(self.matrix, self.grid, self.h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherent::periodic_grid;

    #[test]
    fn harmonic_spectrum() {
        let h = 0.2;
        let g = periodic_grid(4.0, 0.05).unwrap();
        let op = GridOperator::schrodinger(&ClassicalSymbol::harmonic(-1.0), &g, h).unwrap();
        let ev = op.eigenvalues();
        for (k, l) in ev.iter().take(4).enumerate() {
            assert!((l - ((2 * k + 1) as f64 * h - 1.0)).abs() < 1e-9, "{k}: {l}");
        }
        assert!((op.negative_trace() + 1.2).abs() < 1e-9);
    }

    #[test]
    fn rejects_non_hermitian() {
        let g = periodic_grid(1.0, 0.25).unwrap();
        let mut m = DMatrix::from_element(8, 8, Complex::from(0.0));
        m[(0, 1)] = Complex::new(0.0, 1.0);
        assert!(GridOperator::new(m, g, 0.1).is_err());
    }

    #[test]
    fn trace_product_matches_matrix_product() {
        let g = periodic_grid(1.0, 0.2).unwrap();
        let a = GridOperator::schrodinger(&ClassicalSymbol::harmonic(0.0), &g, 0.3).unwrap();
        let b = GridOperator::schrodinger(&ClassicalSymbol::polynomial(&[0.0, 1.0], &[1.0, 0.0, 0.0, 1.0]), &g, 0.3).unwrap();
        let direct: f64 = (&a.matrix * &b.matrix).trace().re;
        assert!((a.trace_product(&b) - direct).abs() < 1e-10 * direct.abs().max(1.0));
    }
}
