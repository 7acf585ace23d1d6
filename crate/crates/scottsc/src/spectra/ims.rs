use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::PartitionPair;

use super::line::LineOperator;
use super::tridiag::SymTridiagonal;

/// Residual `Φ₋HΦ₋ + Φ₊HΦ₊ - H - h²𝓘` with `d = |x - center|`.
pub fn ims_residual(op: &LineOperator, partition: &PartitionPair, center: f64) -> SymTridiagonal {
    let x = op.interior();
    let n = x.len();
    let pm: Vec<f64> = x.iter().map(|&x| partition.phi_minus((x - center).abs())).collect();
    let pp: Vec<f64> = x.iter().map(|&x| partition.phi_plus((x - center).abs())).collect();
    let h = op.matrix();
    let h2 = op.h * op.h;
    let d = (0..n)
        .map(|i| {
            let loc = (pm[i] * pm[i] + pp[i] * pp[i]) * h.d[i];
            loc - h.d[i] - h2 * partition.localization_error((x[i] - center).abs())
        })
        .collect();
    let e = (0..n - 1).map(|i| (pm[i] * pm[i + 1] + pp[i] * pp[i + 1] - 1.0) * h.e[i]).collect();
    SymTridiagonal::new(d, e)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImsReport {
    /// Spectral norm of the residual compressed to low-energy sine modes.
    pub band_limited_norm: f64,
    /// Spectral norm of the full grid residual.
    pub full_norm: f64,
    pub modes: usize,
}

/// IMS localization residual measured on Dirichlet sine modes with `h²k² ≤ energy_cutoff`.
///
/// The full grid norm is dominated by grid-scale modes, where the 3-point
/// Laplacian is not a derivative; the band-limited norm is the meaningful one.
pub fn ims_identity_check(
    op: &LineOperator,
    partition: &PartitionPair,
    center: f64,
    energy_cutoff: f64,
) -> Result<ImsReport> {
    if !(energy_cutoff > 0.0) {
        return Err(Error::invalid("energy cutoff must be positive"));
    }
    let res = ims_residual(op, partition, center);
    let n = res.len();
    let dx = op.grid.spacing();
    let len = (n + 1) as f64 * dx;
    let kmax = if op.h > 0.0 { energy_cutoff.sqrt() / op.h } else { f64::INFINITY };
    let modes = (((kmax * len / std::f64::consts::PI).floor()) as usize).clamp(1, n);
    let norm = (2.0 / (n + 1) as f64).sqrt();
    let q = DMatrix::from_fn(n, modes, |i, k| {
        norm * (std::f64::consts::PI * ((k + 1) * (i + 1)) as f64 / (n + 1) as f64).sin()
    });
    let mut eq = DMatrix::zeros(n, modes);
    for k in 0..modes {
        let col: Vec<f64> = q.column(k).iter().cloned().collect();
        let v = res.matvec(&col);
        for i in 0..n {
            eq[(i, k)] = v[i];
        }
    }
    let small = q.transpose() * eq;
    let sym = (&small + small.transpose()) * 0.5;
    let band = sym.symmetric_eigenvalues().iter().fold(0.0f64, |m, l| m.max(l.abs()));
    let full = res.spectral_norm();
    Ok(ImsReport { band_limited_norm: band, full_norm: full, modes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{make_partition, Grid1D};
    use crate::spectra::line_operator;

    #[test]
    fn free_laplacian_residual_is_small_on_smooth_modes() {
        let g = Grid1D::uniform(-4.0, 4.0, 8001).unwrap();
        let op = line_operator(|_| 0.0, 0.1, &g).unwrap();
        let r = ims_identity_check(&op, &make_partition(1.0).unwrap(), 0.0, 4.0).unwrap();
        assert!(r.band_limited_norm < 1e-4, "{}", r.band_limited_norm);
        assert!(r.full_norm > r.band_limited_norm);
    }

    #[test]
    fn trivial_partition_is_exact() {
        let g = Grid1D::uniform(-2.0, 2.0, 401).unwrap();
        let op = line_operator(|x| x * x, 0.1, &g).unwrap();
        let r = ims_identity_check(&op, &make_partition(10.0).unwrap(), 0.0, 4.0).unwrap();
        assert!(r.full_norm < 1e-14);
    }

    #[test]
    fn multiplication_operator_commutes() {
        let g = Grid1D::uniform(-4.0, 4.0, 801).unwrap();
        let mut op = line_operator(|x| x.sin(), 0.1, &g).unwrap();
        op.h = 0.0;
        let r = ims_identity_check(&op, &make_partition(1.0).unwrap(), 0.0, 4.0).unwrap();
        assert!(r.full_norm < 1e-14, "{}", r.full_norm);
    }
}
