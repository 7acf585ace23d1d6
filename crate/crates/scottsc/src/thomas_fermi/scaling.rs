use super::atomic::TfSolution;
use crate::error::{Error, Result};

/// Maps the solution for charge `z'` to the one for `z'/γ³`.
///
/// Lengths scale by `γ`, potentials by `γ⁻⁴`, densities by `γ⁻⁶` and energies by `γ⁻⁷`.
pub fn tf_scaling_transform(sol: &TfSolution, gamma: f64) -> Result<TfSolution> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::invalid(format!("scaling factor must be positive, got {gamma}")));
    }
    let (g4, g6, g7) = (gamma.powi(-4), gamma.powi(-6), gamma.powi(-7));
    Ok(TfSolution {
        z: sol.z / gamma.powi(3),
        length_scale: sol.length_scale * gamma,
        grid: sol.grid.scaled(gamma)?,
        v_tf: sol.v_tf.iter().map(|v| v * g4).collect(),
        rho_tf: sol.rho_tf.iter().map(|p| p * g6).collect(),
        e_tf: sol.e_tf * g7,
        d_rho: sol.d_rho * g7,
        universal: sol.universal.clone(),
    })
}
