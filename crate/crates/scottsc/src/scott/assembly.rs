use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Warning};
use crate::thomas_fermi::{atomic_tf, default_tf_grid, NucleiConfig};

/// Two-term molecular energy bookkeeping with spin, `|Z|^{7/3}E^TF + ¼ΣZ_k²·2`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MolecularAssembly {
    pub total_charge: f64,
    /// `|Z|^{7/3} Σ_k E^TF(z_k)`, sum of atoms.
    pub e_tf_scaled: f64,
    /// `½ Σ_k Z_k²` with `Z_k = |Z| z_k`.
    pub scott_total: f64,
    /// `√((1-ε)/2) |Z|^{-1/3}` with `ε = |Z|^{-2/3}`.
    pub h_effective: f64,
    pub epsilon: f64,
    /// `e_tf_scaled + scott_total`.
    pub two_term: f64,
    pub warnings: Vec<Warning>,
}

/// Charges in `cfg` are the normalized `z_k`; `total_charge` is `|Z|`.
pub fn molecular_energy_assembly(cfg: &NucleiConfig, total_charge: f64) -> Result<MolecularAssembly> {
    if !(total_charge > 0.0 && total_charge.is_finite()) {
        return Err(Error::invalid(format!("total charge must be positive, got {total_charge}")));
    }
    // E^TF(z) = z^{7/3} E^TF(1)
    let unit = atomic_tf(1.0, &default_tf_grid(1.0, 2000)?)?.e_tf;
    let e_atoms: f64 = cfg.charges.iter().map(|z| z.powf(7.0 / 3.0) * unit).sum();
    let e_tf_scaled = total_charge.powf(7.0 / 3.0) * e_atoms;
    let scott_total = 0.5 * cfg.charges.iter().map(|z| (total_charge * z).powi(2)).sum::<f64>();
    let epsilon = total_charge.powf(-2.0 / 3.0);
    let h_effective = ((1.0 - epsilon) / 2.0).max(0.0).sqrt() * total_charge.powf(-1.0 / 3.0);
    let mut warnings = Vec::new();
    if cfg.len() > 1 {
        warnings.push(Warning::SumOfAtoms { context: "molecular_energy_assembly".into() });
    }
    Ok(MolecularAssembly {
        total_charge,
        e_tf_scaled,
        scott_total,
        h_effective,
        epsilon,
        two_term: e_tf_scaled + scott_total,
        warnings,
    })
}
