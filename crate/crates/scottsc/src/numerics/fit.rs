use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares fit `y ≈ Σ c_k h^{e_k}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponents: Vec<f64>,
    pub coefficients: Vec<f64>,
    /// RMS misfit over the samples.
    pub residual_norm: f64,
}

impl FitResult {
    pub fn coefficient(&self, exponent: f64) -> Option<f64> {
        self.exponents.iter().position(|&e| e == exponent).map(|i| self.coefficients[i])
    }

    pub fn evaluate(&self, h: f64) -> f64 {
        self.exponents.iter().zip(&self.coefficients).map(|(e, c)| c * h.powf(*e)).sum()
    }
}

/// Exponents may be any reals; integer powers are the common case.
pub fn fit_power_series(h_values: &[f64], y_values: &[f64], exponents: &[f64]) -> Result<FitResult> {
    let m = h_values.len();
    let k = exponents.len();
    if y_values.len() != m {
        return Err(Error::invalid("h and y sample counts differ"));
    }
    if k == 0 {
        return Err(Error::invalid("no exponents given"));
    }
    if m < k {
        return Err(Error::invalid(format!("{m} samples cannot determine {k} coefficients")));
    }
    if h_values.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
        return Err(Error::invalid("h values must be positive and finite"));
    }
    for i in 0..m {
        for j in 0..i {
            if h_values[i] == h_values[j] {
                return Err(Error::invalid("h values must be distinct"));
            }
        }
    }
    let mut a = DMatrix::from_fn(m, k, |i, j| h_values[i].powf(exponents[j]));
    // column scaling keeps the singular-value test meaningful across powers
    let scales: Vec<f64> = (0..k).map(|j| a.column(j).norm()).collect();
    for (j, s) in scales.iter().enumerate() {
        a.column_mut(j).unscale_mut(*s);
    }
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(Error::invalid("rank-deficient fit design"));
    }
    let y = DVector::from_column_slice(y_values);
    let x = svd.solve(&y, 0.0).map_err(|e| Error::SolverFailure(e.to_string()))?;
    let coefficients: Vec<f64> = x.iter().zip(&scales).map(|(c, s)| c / s).collect();
    let resid = &a * &x - &y;
    let residual_norm = (resid.norm_squared() / m as f64).sqrt();
    Ok(FitResult { exponents: exponents.to_vec(), coefficients, residual_norm })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_single_power() {
        let h = [0.1, 0.2, 0.4];
        let y: Vec<f64> = h.iter().map(|h| 2.0 / (h * h)).collect();
        let f = fit_power_series(&h, &y, &[-2.0]).unwrap();
        assert!((f.coefficients[0] - 2.0).abs() < 1e-10);
        assert!(f.residual_norm < 1e-9);
    }

    #[test]
    fn hydrogen_two_term_model() {
        let h = [0.05, 0.07, 0.1, 0.15];
        let y: Vec<f64> = h.iter().map(|h: &f64| -h.powi(-3) / 12.0 + h.powi(-2) / 8.0).collect();
        let f = fit_power_series(&h, &y, &[-3.0, -2.0]).unwrap();
        assert!((f.coefficients[0] + 1.0 / 12.0).abs() < 1e-9);
        assert!((f.coefficients[1] - 0.125).abs() < 1e-9);
    }

    #[test]
    fn underdetermined_and_degenerate() {
        assert!(fit_power_series(&[0.1], &[1.0], &[-2.0, -1.0]).is_err());
        assert!(fit_power_series(&[0.1, 0.2, 0.3], &[1.0, 2.0, 3.0], &[-1.0, -1.0]).is_err());
        assert!(fit_power_series(&[0.1, 0.1], &[1.0, 2.0], &[-1.0]).is_err());
    }
}
