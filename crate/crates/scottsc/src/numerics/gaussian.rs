use std::f64::consts::PI;

use crate::error::{Error, Result};

/// `G_b(v) = (b/π)^{n/2} exp(-b|v|²)` with `n = v.len()`.
pub fn gaussian_weight_g_b(b: f64, v: &[f64]) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::invalid(format!("Gaussian parameter b must be positive, got {b}")));
    }
    let r2: f64 = v.iter().map(|x| x * x).sum();
    Ok((b / PI).powf(v.len() as f64 / 2.0) * (-b * r2).exp())
}
