use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hydrogen::scott_term;
use crate::error::{Error, Result, Warning};
use crate::numerics::{fit_power_series, FitResult};
use crate::semiclassics::{weyl_energy, WeylSpec};
use crate::spectra::{neg_sum_radial, ChannelSelection, RadialFn, RadialGrid, RadialProblem, TraceResult};
use crate::thomas_fermi::{atomic_tf, default_tf_grid, TfSolution};

/// Exponents of the residual fit `quantum - weyl ≈ c₂h⁻² + c₁h⁻¹`.
pub const SCOTT_FIT_EXPONENTS: [f64; 2] = [-2.0, -1.0];

/// Discretization of one Scott sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScottConfig {
    /// Coarse radial intervals; the engine also solves on twice as many.
    pub intervals: usize,
    /// Box radius at `z = 1`; scaled by `z^{-1/3}`.
    pub r_max: f64,
    /// Inner grid scale in units of `h²/z`.
    pub inner_scale: f64,
    /// Channels added beyond the automatic selection.
    pub extra_channels: usize,
    /// Radial points of the TF table.
    pub tf_points: usize,
}

impl Default for ScottConfig {
    fn default() -> Self {
        ScottConfig { intervals: 4000, r_max: 60.0, inner_scale: 1.0, extra_channels: 0, tf_points: 4000 }
    }
}

impl ScottConfig {
    fn validate(&self) -> Result<()> {
        if self.intervals < 8 || !(self.r_max > 0.0 && self.inner_scale > 0.0) || self.tf_points < 8 {
            return Err(Error::invalid(format!("invalid Scott configuration {self:?}")));
        }
        Ok(())
    }

    fn grid(&self, z: f64, h: f64) -> Result<RadialGrid> {
        RadialGrid::mapped(self.inner_scale * h * h / z, self.r_max * z.powf(-1.0 / 3.0), self.intervals)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScottExperiment {
    pub z: f64,
    pub h_values: Vec<f64>,
    pub results: Vec<TraceResult>,
    /// Fit of `quantum - weyl` against [`SCOTT_FIT_EXPONENTS`].
    pub fit: FitResult,
    pub config: ScottConfig,
    pub warnings: Vec<Warning>,
}

impl ScottExperiment {
    /// Fitted `h⁻²` coefficient, the Scott coefficient estimate (`z²/8` in the limit).
    pub fn scott_coefficient(&self) -> f64 {
        self.fit.coefficient(-2.0).unwrap_or(f64::NAN)
    }
}

fn check_h_values(h_values: &[f64]) -> Result<()> {
    if h_values.len() < SCOTT_FIT_EXPONENTS.len() {
        return Err(Error::invalid("need at least two h values"));
    }
    if h_values.iter().any(|&h| !(h > 0.0 && h.is_finite())) {
        return Err(Error::invalid("h values must be positive and finite"));
    }
    if h_values.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::invalid("h values must be strictly decreasing"));
    }
    Ok(())
}

fn channels_for(p: &RadialProblem, extra: usize) -> Result<ChannelSelection> {
    if extra == 0 {
        return Ok(ChannelSelection::Auto);
    }
    let probe = neg_sum_radial(&p.clone().with_channels(ChannelSelection::Auto), 0.0)?;
    let n = probe.sentinel + extra;
    Ok(ChannelSelection::Explicit((0..n).collect()))
}

/// Quantum trace of `-h²Δ + w` against a given Weyl term, per `h`.
fn sweep<F>(z: f64, w: RadialFn, h_values: &[f64], config: &ScottConfig, weyl: F) -> Result<Vec<TraceResult>>
where
    F: Fn(f64) -> Result<f64> + Sync,
{
    h_values
        .par_iter()
        .map(|&h| {
            let mut p = RadialProblem::new(w.clone(), h, config.grid(z, h)?);
            // TF energies scale like z^{4/3}
            p.energy_floor *= z.powf(4.0 / 3.0);
            p.channels = channels_for(&p, config.extra_channels)?;
            let s = neg_sum_radial(&p, 0.0)?;
            Ok(TraceResult::new(h, s.total, weyl(h)?, scott_term(&[z], h), s.warnings))
        })
        .collect()
}

fn fit_and_collect(z: f64, h_values: &[f64], results: Vec<TraceResult>, config: &ScottConfig) -> Result<ScottExperiment> {
    let y: Vec<f64> = results.iter().map(|t| t.quantum_sum - t.weyl_sum).collect();
    let fit = fit_power_series(h_values, &y, &SCOTT_FIT_EXPONENTS)?;
    let mut warnings: Vec<Warning> = results.iter().flat_map(|t| t.warnings.iter().cloned()).collect();
    let ratio = h_values[0] / h_values[h_values.len() - 1];
    if ratio < 2.0 {
        warnings.push(Warning::FitConditioning { context: "scott_experiment".into(), h_ratio: ratio });
    }
    Ok(ScottExperiment { z, h_values: h_values.to_vec(), results, fit, config: config.clone(), warnings })
}

/// Weyl term `-(15π²h³)^{-1} ∫ (V^TF)^{5/2}` over the experiment box.
pub fn tf_weyl_energy(tf: &TfSolution, h: f64, r_max: f64) -> Result<f64> {
    let t = tf.clone();
    let mut spec = WeylSpec::new(3, Arc::new(move |r| -t.potential(r)), h, r_max)?;
    spec.panels = 2000;
    weyl_energy(&spec)
}

/// Trace of `-h²Δ - V^TF` against its Weyl term over an `h` sweep.
pub fn scott_experiment_tf(z: f64, h_values: &[f64], config: &ScottConfig) -> Result<ScottExperiment> {
    config.validate()?;
    check_h_values(h_values)?;
    let tf = atomic_tf(z, &default_tf_grid(z, config.tf_points)?)?;
    let r_max = config.r_max * z.powf(-1.0 / 3.0);
    let t = tf.clone();
    let w: RadialFn = Arc::new(move |r| -t.potential(r));
    let results = sweep(z, w, h_values, config, |h| tf_weyl_energy(&tf, h, r_max))?;
    fit_and_collect(z, h_values, results, config)
}

/// Same pipeline with `V = z/r - 1`; the Weyl term is the closed form `-z³/(12h³)`.
pub fn scott_experiment_coulomb(z: f64, h_values: &[f64], config: &ScottConfig) -> Result<ScottExperiment> {
    config.validate()?;
    check_h_values(h_values)?;
    let w: RadialFn = Arc::new(move |r| -z / r + 1.0);
    let results = sweep(z, w, h_values, config, |h| Ok(-z.powi(3) / (12.0 * h.powi(3))))?;
    fit_and_collect(z, h_values, results, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scott::hydrogen_exact_sum;

    #[test]
    fn rejects_bad_sweeps() {
        let c = ScottConfig::default();
        assert!(scott_experiment_coulomb(1.0, &[0.1], &c).is_err());
        assert!(scott_experiment_coulomb(1.0, &[0.1, 0.2], &c).is_err());
        assert!(scott_experiment_coulomb(1.0, &[0.1, 0.1], &c).is_err());
        let bad = ScottConfig { intervals: 2, ..c };
        assert!(scott_experiment_coulomb(1.0, &[0.2, 0.1], &bad).is_err());
    }

    #[test]
    fn coulomb_pipeline_matches_closed_form() {
        let c = ScottConfig { intervals: 2000, ..ScottConfig::default() };
        let e = scott_experiment_coulomb(1.0, &[0.2, 0.1], &c).unwrap();
        for t in &e.results {
            let exact = hydrogen_exact_sum(1.0, t.h);
            assert!((t.quantum_sum / exact - 1.0).abs() < 0.01, "{} vs {exact}", t.quantum_sum);
        }
        assert!(e.warnings.is_empty(), "{:?}", e.warnings);
        let c = ScottConfig { intervals: 500, ..ScottConfig::default() };
        let e = scott_experiment_coulomb(1.0, &[0.2, 0.15], &c).unwrap();
        assert!(e.warnings.iter().any(|w| matches!(w, Warning::FitConditioning { .. })));
    }

    #[test]
    fn tf_weyl_matches_energy_identity() {
        let tf = atomic_tf(1.0, &default_tf_grid(1.0, 4000).unwrap()).unwrap();
        let w = tf_weyl_energy(&tf, 0.5f64.sqrt(), 1e4).unwrap();
        assert!((2.0 * w / (tf.e_tf + tf.d_rho) - 1.0).abs() < 1e-3);
    }
}
