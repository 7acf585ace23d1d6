use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::weyl::{weyl_energy, WeylSpec};
use crate::error::{Error, Result};
use crate::numerics::{fit_power_series, Bump, FitResult};
use crate::spectra::{neg_sum_radial, RadialFn, RadialGrid, RadialProblem, TraceResult};

/// Residual exponent `-n + 6/5` for `n = 3`.
pub const LOCAL_TRACE_EXPONENT: f64 = -3.0 + 1.2;

/// Default radial intervals per unit of `h`.
pub const DEFAULT_POINTS_PER_H: f64 = 16.0;

/// Outcome of a local trace sweep for `φ(-h²Δ + V)φ` in three dimensions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalTraceExperiment {
    pub results: Vec<TraceResult>,
    /// `|residual| ≈ C h^{-n+6/5}`.
    pub fit: FitResult,
    /// `|residual|·h^{n-6/5}` per `h`.
    pub scaled_residuals: Vec<f64>,
    /// Max over min of `scaled_residuals`; 1 when all residuals vanish.
    pub stability_ratio: f64,
    pub points_per_h: f64,
}

/// Quantum trace of the localized operator against its Weyl term over an `h` sweep.
///
/// The box is the bump support with Dirichlet conditions; the radial spacing
/// is `h / points_per_h`.
pub fn local_trace_experiment(
    v: RadialFn,
    bump: &Bump,
    h_values: &[f64],
    points_per_h: f64,
) -> Result<LocalTraceExperiment> {
    if h_values.is_empty() {
        return Err(Error::invalid("no h values given"));
    }
    if !(points_per_h >= 2.0 && points_per_h.is_finite()) {
        return Err(Error::invalid(format!("points per h must be at least 2, got {points_per_h}")));
    }
    let r_max = bump.support();
    let weyl_spec = WeylSpec::new(3, v.clone(), 1.0, r_max)?.with_bump(bump.clone())?;
    let results = h_values
        .par_iter()
        .map(|&h| {
            if !(h > 0.0 && h.is_finite()) {
                return Err(Error::invalid(format!("h must be positive, got {h}")));
            }
            let intervals = (r_max * points_per_h / h).ceil() as usize;
            let grid = RadialGrid::uniform(r_max, intervals.max(8))?;
            let p = RadialProblem::new(v.clone(), h, grid).with_localization(bump.clone());
            let s = neg_sum_radial(&p, 0.0)?;
            let weyl = weyl_energy(&weyl_spec.clone().with_h(h))?;
            Ok(TraceResult::new(h, s.total, weyl, 0.0, s.warnings))
        })
        .collect::<Result<Vec<_>>>()?;
    let scaled: Vec<f64> = results.iter().map(|t| t.residual.abs() * t.h.powf(-LOCAL_TRACE_EXPONENT)).collect();
    let fit = if results.iter().all(|t| t.residual == 0.0) {
        FitResult { exponents: vec![LOCAL_TRACE_EXPONENT], coefficients: vec![0.0], residual_norm: 0.0 }
    } else {
        let y: Vec<f64> = results.iter().map(|t| t.residual.abs()).collect();
        fit_power_series(h_values, &y, &[LOCAL_TRACE_EXPONENT])?
    };
    let max = scaled.iter().cloned().fold(0.0, f64::max);
    let min = scaled.iter().cloned().fold(f64::INFINITY, f64::min);
    let stability_ratio = if max == 0.0 { 1.0 } else { max / min };
    Ok(LocalTraceExperiment { results, fit, scaled_residuals: scaled, stability_ratio, points_per_h })
}

/// `-(1 - r²)² φ₁(r)`: a smooth well vanishing to infinite order at `r = 1`.
pub fn smooth_well() -> Result<RadialFn> {
    let cut = crate::numerics::make_bump(&[0.0], 1.0, 7)?;
    Ok(std::sync::Arc::new(move |r: f64| {
        let s = 1.0 - r * r;
        -s * s * cut.radial(r)
    }))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::numerics::make_bump;

    #[test]
    fn nonnegative_potential_gives_zero() {
        let bump = make_bump(&[0.0], 1.5, 7).unwrap();
        let e = local_trace_experiment(Arc::new(|r| r * r), &bump, &[0.2, 0.1], 8.0).unwrap();
        for t in &e.results {
            assert_eq!((t.quantum_sum, t.weyl_sum, t.residual), (0.0, 0.0, 0.0));
        }
        assert_eq!(e.stability_ratio, 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        let bump = make_bump(&[0.0], 1.5, 7).unwrap();
        let v = smooth_well().unwrap();
        assert!(local_trace_experiment(v.clone(), &bump, &[], 8.0).is_err());
        assert!(local_trace_experiment(v.clone(), &bump, &[0.1], 1.0).is_err());
        assert!(local_trace_experiment(v, &bump, &[-0.1], 8.0).is_err());
    }

    #[test]
    fn quantum_tracks_weyl() {
        let bump = make_bump(&[0.0], 1.5, 7).unwrap();
        let e = local_trace_experiment(smooth_well().unwrap(), &bump, &[0.2, 0.14, 0.1], 12.0).unwrap();
        for t in &e.results {
            assert!(t.quantum_sum < 0.0 && t.weyl_sum < 0.0);
        }
        let last = e.results.last().unwrap();
        assert!((last.quantum_sum / last.weyl_sum - 1.0).abs() < 0.2);
    }

    #[test]
    fn smooth_well_sweep() {
        let bump = make_bump(&[0.0], 1.5, 7).unwrap();
        let hs = [0.1, 0.07, 0.05];
        let e = local_trace_experiment(smooth_well().unwrap(), &bump, &hs, DEFAULT_POINTS_PER_H).unwrap();
        assert!(e.stability_ratio < 3.0, "{:?}", e.scaled_residuals);
        let last = e.results.last().unwrap();
        assert!((last.quantum_sum / last.weyl_sum - 1.0).abs() < 0.05);
        let fine = local_trace_experiment(smooth_well().unwrap(), &bump, &hs, 2.0 * DEFAULT_POINTS_PER_H).unwrap();
        for (a, b) in e.results.iter().zip(&fine.results) {
            assert!((a.residual - b.residual).abs() < 0.1 * a.residual.abs());
            assert!(a.warnings.is_empty());
        }
    }
}
