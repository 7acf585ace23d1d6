use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Bump;
use crate::Warning;

use super::line::{refinement_warning, richardson};
use super::tridiag::SymTridiagonal;
use super::DEFAULT_REFINEMENT_TOLERANCE;

pub type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Radial nodes `r_i = α(e^{t_i} - 1)` on a uniform `t` grid, or uniform in `r`.
///
/// `r_0 = 0` and `r_N = r_max` are Dirichlet boundary nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialGrid {
    /// Inner scale `α`; `None` means uniform spacing in `r`.
    pub inner_scale: Option<f64>,
    pub r_max: f64,
    /// Number of intervals.
    pub intervals: usize,
}

impl RadialGrid {
    pub fn mapped(inner_scale: f64, r_max: f64, intervals: usize) -> Result<Self> {
        if !(inner_scale > 0.0 && r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::invalid("mapped radial grid needs positive inner scale and r_max"));
        }
        check_intervals(intervals)?;
        Ok(RadialGrid { inner_scale: Some(inner_scale), r_max, intervals })
    }

    pub fn uniform(r_max: f64, intervals: usize) -> Result<Self> {
        if !(r_max > 0.0 && r_max.is_finite()) {
            return Err(Error::invalid("radial grid needs positive r_max"));
        }
        check_intervals(intervals)?;
        Ok(RadialGrid { inner_scale: None, r_max, intervals })
    }

    pub fn nodes(&self) -> Vec<f64> {
        let n = self.intervals;
        match self.inner_scale {
            Some(a) => {
                let t_max = (self.r_max / a).ln_1p();
                let mut r: Vec<f64> = (0..=n).map(|i| a * (t_max * i as f64 / n as f64).exp_m1()).collect();
                r[n] = self.r_max;
                r
            }
            None => (0..=n).map(|i| self.r_max * i as f64 / n as f64).collect(),
        }
    }

    pub fn refined(&self) -> Self {
        RadialGrid { intervals: 2 * self.intervals, ..self.clone() }
    }
}

fn check_intervals(n: usize) -> Result<()> {
    if n < 8 {
        return Err(Error::invalid(format!("radial grid needs at least 8 intervals, got {n}")));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ChannelSelection {
    /// Include `ℓ` while the effective potential dips below zero somewhere.
    Auto,
    /// Listed channels followed by a sentinel that must be empty.
    Explicit(Vec<usize>),
    /// Listed channels only, no sentinel: a partial trace.
    Partial(Vec<usize>),
}

/// `-h² d²/dr² + ℓ(ℓ+1)h²/r² + W(r) + shift` on `u = rψ`, summed over channels.
#[derive(Clone)]
pub struct RadialProblem {
    /// Signed potential energy `W(r)`.
    pub potential: RadialFn,
    pub h: f64,
    pub grid: RadialGrid,
    pub channels: ChannelSelection,
    /// Optional radial localization `φ(r)` (center ignored, `|x|` used).
    pub localization: Option<Bump>,
    /// Eigenvalues above `-energy_floor` are exempt from the box-size check.
    pub energy_floor: f64,
    pub refinement_tolerance: f64,
}

impl std::fmt::Debug for RadialProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialProblem")
            .field("h", &self.h)
            .field("grid", &self.grid)
            .field("channels", &self.channels)
            .field("localization", &self.localization)
            .field("energy_floor", &self.energy_floor)
            .finish_non_exhaustive()
    }
}

impl RadialProblem {
    pub fn new(potential: RadialFn, h: f64, grid: RadialGrid) -> Self {
        RadialProblem {
            potential,
            h,
            grid,
            channels: ChannelSelection::Auto,
            localization: None,
            energy_floor: 1e-3,
            refinement_tolerance: DEFAULT_REFINEMENT_TOLERANCE,
        }
    }

    pub fn with_channels(mut self, channels: ChannelSelection) -> Self {
        self.channels = channels;
        self
    }

    pub fn with_localization(mut self, bump: Bump) -> Self {
        self.localization = Some(bump);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSpectrum {
    pub l: usize,
    /// Negative eigenvalues on the finer grid, descending.
    pub negative_eigenvalues: Vec<f64>,
    pub degeneracy: usize,
    /// Channel sum `Σλ` (without degeneracy), Richardson-extrapolated.
    pub sum: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSpectrum {
    pub channels: Vec<ChannelSpectrum>,
    /// `Σ_ℓ (2ℓ+1) Σλ`, Richardson-extrapolated.
    pub total: f64,
    pub coarse_total: f64,
    pub fine_total: f64,
    pub sentinel: usize,
    pub warnings: Vec<Warning>,
}

struct Discretization {
    r: Vec<f64>,
    kinetic_d: Vec<f64>,
    kinetic_e: Vec<f64>,
    phi: Option<Vec<f64>>,
    potential: Vec<f64>,
}

impl Discretization {
    fn new(p: &RadialProblem, grid: &RadialGrid, shift: f64) -> Result<Self> {
        let nodes = grid.nodes();
        let n = nodes.len() - 2;
        let h2 = p.h * p.h;
        let mut w = vec![0.0; n];
        let mut hp = vec![0.0; n];
        let mut hm = vec![0.0; n];
        for i in 0..n {
            hm[i] = nodes[i + 1] - nodes[i];
            hp[i] = nodes[i + 2] - nodes[i + 1];
            w[i] = 0.5 * (hm[i] + hp[i]);
        }
        let kinetic_d = (0..n).map(|i| h2 * (1.0 / hp[i] + 1.0 / hm[i]) / w[i]).collect();
        let kinetic_e = (0..n - 1).map(|i| -h2 / (hp[i] * (w[i] * w[i + 1]).sqrt())).collect();
        let r: Vec<f64> = nodes[1..=n].to_vec();
        let potential: Vec<f64> = r.iter().map(|&x| (p.potential)(x) + shift).collect();
        if potential.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("potential is not finite on the radial grid"));
        }
        let phi = p.localization.as_ref().map(|b| r.iter().map(|&x| b.radial(x)).collect());
        Ok(Discretization { r, kinetic_d, kinetic_e, phi, potential })
    }

    fn channel_matrix(&self, l: usize, h: f64) -> Option<SymTridiagonal> {
        let c = (l * (l + 1)) as f64 * h * h;
        let n = self.r.len();
        let diag = |i: usize| self.kinetic_d[i] + self.potential[i] + c / (self.r[i] * self.r[i]);
        match &self.phi {
            None => Some(SymTridiagonal::new((0..n).map(diag).collect(), self.kinetic_e.clone())),
            Some(phi) => {
                let idx: Vec<usize> = (0..n).filter(|&i| phi[i] != 0.0).collect();
                if idx.is_empty() {
                    return None;
                }
                let d = idx.iter().map(|&i| phi[i] * phi[i] * diag(i)).collect();
                let e = idx
                    .windows(2)
                    .map(|w| if w[1] == w[0] + 1 { phi[w[0]] * phi[w[1]] * self.kinetic_e[w[0]] } else { 0.0 })
                    .collect();
                Some(SymTridiagonal::new(d, e))
            }
        }
    }

    /// Node indices kept in `channel_matrix`.
    fn kept(&self) -> Vec<usize> {
        match &self.phi {
            None => (0..self.r.len()).collect(),
            Some(phi) => (0..phi.len()).filter(|&i| phi[i] != 0.0).collect(),
        }
    }

    fn min_effective(&self, l: usize, h: f64) -> f64 {
        let c = (l * (l + 1)) as f64 * h * h;
        self.kept().into_iter().map(|i| self.potential[i] + c / (self.r[i] * self.r[i])).fold(f64::INFINITY, f64::min)
    }
}

const BOX_REGION: f64 = 0.9;
const BOX_MASS_LIMIT: f64 = 1e-6;

struct ChannelRun {
    coarse: f64,
    fine: f64,
    fine_eigs: Vec<f64>,
}

fn run_channel(p: &RadialProblem, coarse: &Discretization, fine: &Discretization, l: usize) -> Result<ChannelRun> {
    let eigs = |d: &Discretization| -> (Vec<f64>, Option<SymTridiagonal>) {
        match d.channel_matrix(l, p.h) {
            None => (Vec::new(), None),
            Some(t) => (t.eigenvalues_below(-t.rounding_floor()), Some(t)),
        }
    };
    let (ce, _) = eigs(coarse);
    let (fe, ft) = eigs(fine);
    // a localized operator vanishes beyond the bump support, so the wall is exact there
    let inside = p.localization.as_ref().is_some_and(|b| b.support() <= p.grid.r_max);
    if let (Some(t), false) = (ft, inside) {
        if let Some(&lam) = fe.iter().rev().find(|&&x| x < -p.energy_floor) {
            let v = t.eigenvector(lam);
            let kept = fine.kept();
            let cut = BOX_REGION * p.grid.r_max;
            let mass: f64 = kept.iter().zip(&v).filter(|(&i, _)| fine.r[i] > cut).map(|(_, x)| x * x).sum();
            if mass > BOX_MASS_LIMIT {
                return Err(Error::BoxSize { l, r_max: p.grid.r_max, mass });
            }
        }
    }
    Ok(ChannelRun { coarse: ce.iter().sum(), fine: fe.iter().sum(), fine_eigs: fe })
}

/// Sum of negative eigenvalues of the radially reduced operator over angular momentum channels.
pub fn neg_sum_radial(p: &RadialProblem, shift: f64) -> Result<RadialSpectrum> {
    if !(p.h > 0.0 && p.h.is_finite()) {
        return Err(Error::invalid(format!("h must be positive, got {}", p.h)));
    }
    let fine_grid = p.grid.refined();
    let coarse = Discretization::new(p, &p.grid, shift)?;
    let fine = Discretization::new(p, &fine_grid, shift)?;
    let ls: Vec<usize> = match &p.channels {
        ChannelSelection::Explicit(v) | ChannelSelection::Partial(v) => {
            let mut v = v.clone();
            v.sort_unstable();
            v.dedup();
            v
        }
        ChannelSelection::Auto => {
            let mut v = Vec::new();
            let mut l = 0;
            while fine.min_effective(l, p.h) < 0.0 {
                v.push(l);
                l += 1;
                if l > 100_000 {
                    return Err(Error::SolverFailure("channel cutoff not reached".into()));
                }
            }
            v
        }
    };
    let sentinel = ls.last().map_or(0, |l| l + 1);
    let check_sentinel = !matches!(p.channels, ChannelSelection::Partial(_));
    let mut all = ls.clone();
    if check_sentinel {
        all.push(sentinel);
    }
    let runs: Vec<Result<ChannelRun>> = all.par_iter().map(|&l| run_channel(p, &coarse, &fine, l)).collect();
    let mut channels = Vec::with_capacity(ls.len());
    let (mut ct, mut ft) = (0.0, 0.0);
    for (l, run) in all.iter().zip(runs) {
        let run = run?;
        if check_sentinel && *l == sentinel {
            if !run.fine_eigs.is_empty() {
                return Err(Error::ChannelCutoff { l: sentinel, count: run.fine_eigs.len() });
            }
            continue;
        }
        let g = (2 * l + 1) as f64;
        ct += g * run.coarse;
        ft += g * run.fine;
        let mut desc = run.fine_eigs;
        desc.reverse();
        channels.push(ChannelSpectrum {
            l: *l,
            negative_eigenvalues: desc,
            degeneracy: 2 * l + 1,
            sum: richardson(run.coarse, run.fine),
        });
    }
    let warnings = refinement_warning("neg_sum_radial", ct, ft, p.refinement_tolerance).into_iter().collect();
    Ok(RadialSpectrum { channels, total: richardson(ct, ft), coarse_total: ct, fine_total: ft, sentinel, warnings })
}

/// Box radius such that the forbidden region beyond the outer turning point at
/// energy `-energy_floor` spans `decay_lengths` local decay lengths (s-wave).
pub fn auto_box_radius<F: Fn(f64) -> f64>(potential: F, h: f64, shift: f64, energy_floor: f64, decay_lengths: f64) -> Result<f64> {
    let e = -energy_floor;
    let w = |r: f64| potential(r) + shift;
    // outer turning point on a log scan
    let mut r_turn = None;
    let mut r = 1e-6;
    while r < 1e7 {
        if w(r) < e {
            r_turn = Some(r);
        }
        r *= 1.01;
    }
    let r_t = match r_turn {
        Some(r) => r,
        None => return Ok(1.0),
    };
    let mut acc = 0.0;
    let mut r = r_t;
    let dr0 = 1e-3 * r_t.max(h);
    while acc < decay_lengths {
        let k = (w(r) - e).max(0.0).sqrt() / h;
        let dr = if k > 0.0 { (0.05 / k).min(dr0 * 100.0).max(dr0) } else { dr0 };
        acc += k * dr;
        r += dr;
        if r > 1e7 {
            return Err(Error::SolverFailure("box radius did not converge".into()));
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coulomb(z: f64) -> RadialFn {
        Arc::new(move |r: f64| -z / r)
    }

    #[test]
    fn hydrogen_s_wave_levels() {
        let h = 0.1;
        let rmax = auto_box_radius(|r| -1.0 / r, h, 1.0, 1e-3, 14.0).unwrap();
        let grid = RadialGrid::mapped(h * h, rmax, 2000).unwrap();
        let p = RadialProblem::new(coulomb(1.0), h, grid).with_channels(ChannelSelection::Partial(vec![0]));
        let s = neg_sum_radial(&p, 1.0).unwrap();
        let exact: f64 = (1..=4).map(|n| 1.0 - 25.0 / (n * n) as f64).sum();
        assert!((s.channels[0].sum - exact).abs() < 1e-2 * exact.abs(), "{} vs {exact}", s.channels[0].sum);
    }

    #[test]
    fn free_operator_with_positive_shift_is_empty() {
        let grid = RadialGrid::uniform(5.0, 200).unwrap();
        let p = RadialProblem::new(Arc::new(|_| 0.0), 0.1, grid);
        let s = neg_sum_radial(&p, 1.0).unwrap();
        assert_eq!(s.total, 0.0);
        assert!(s.channels.is_empty());
        assert_eq!(s.sentinel, 0);
    }

    #[test]
    fn explicit_channels_too_few_trigger_cutoff_error() {
        let h = 0.2;
        let grid = RadialGrid::mapped(h * h, 6.0, 800).unwrap();
        let p = RadialProblem::new(coulomb(1.0), h, grid).with_channels(ChannelSelection::Explicit(vec![0]));
        assert!(matches!(neg_sum_radial(&p, 1.0), Err(Error::ChannelCutoff { l: 1, .. })));
    }

    #[test]
    fn small_box_is_detected() {
        let h = 0.1;
        let grid = RadialGrid::mapped(h * h, 0.9, 800).unwrap();
        let p = RadialProblem::new(coulomb(1.0), h, grid);
        assert!(matches!(neg_sum_radial(&p, 1.0), Err(Error::BoxSize { .. })));
    }

    #[test]
    fn mapped_nodes_hit_endpoints() {
        let g = RadialGrid::mapped(0.01, 30.0, 100).unwrap();
        let r = g.nodes();
        assert_eq!(r[0], 0.0);
        assert_eq!(r[100], 30.0);
        assert!(r.windows(2).all(|w| w[1] > w[0]));
    }
}
