use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::{hermitize, periodic_grid, Lattice, C64};
use super::operator::GridOperator;
use super::params::{CoherentParams, PhasePoint};
use super::symbol::{operator_symbol, ClassicalSymbol};
use crate::error::{Error, Result};
use crate::numerics::Grid1D;

/// Nodes whose operator symbol is positive beyond this many phase-space widths are dropped.
const SKIP_WIDTHS: f64 = 6.0;

/// Resolution of the direction key used to share eigendecompositions.
const DIRECTION_SCALE: f64 = 1e12;

#[derive(Debug, Clone)]
pub struct TrialDensity {
    pub gamma: GridOperator,
    pub nodes_used: usize,
    pub nodes_skipped: usize,
    pub spacing: f64,
    pub under_resolved: bool,
    pub detail: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialSummary {
    pub h: f64,
    pub trace_h_gamma: f64,
    pub negative_trace: f64,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
}

/// `γ = ∫ 𝒢_{u,q} 1(ĥ_{u,q} < 0) 𝒢_{u,q} du dq/(2πh)` with `ĥ = 0` for `|u| > support_radius`.
///
/// The projection onto the negative spectrum of the linear symbol
/// `c0 + α(x - u) + β(P - q)` is computed by dense diagonalization at every
/// lattice node of spacing `σ/2`. Nodes where `c0 > 6 |(α,β)| √(1/(2a) + h)`
/// have a projection that is negligible on the range of `𝒢_{u,q}` and are skipped.
pub fn trial_density_matrix(
    sym: &ClassicalSymbol,
    p: &CoherentParams,
    grid: &Grid1D,
    support_radius: f64,
) -> Result<TrialDensity> {
    if p.n() != 1 {
        return Err(Error::invalid("trial densities are realized on the line only"));
    }
    if !(support_radius > 0.0) {
        return Err(Error::invalid("support radius must be positive"));
    }
    let lat = Lattice::new(grid, p.h())?;
    let n = lat.len();
    let d = 0.5 * p.sigma();
    let width = (p.sigma().powi(2) + p.h()).sqrt();
    let iu = (support_radius / d).floor() as i64;
    let q_edge = 0.9 * lat.nyquist();
    let iq = (q_edge / d).floor() as i64;
    let pm = lat.multiplier_real(|q| q);
    let mut detail = Vec::new();
    if lat.dx > 0.5 * p.h().min(p.sigma()) {
        detail.push(format!("grid spacing {:.3e} too coarse for h and sigma", lat.dx));
    }
    if grid.first() > -support_radius - 4.0 * p.sigma() || grid.last() < support_radius + 4.0 * p.sigma() {
        detail.push("grid does not cover the support plus 4 sigma".into());
    }

    struct Node {
        u: f64,
        q: f64,
        shift: f64,
        lam: f64,
        flipped: bool,
    }
    // Eigenvectors of c + α x + β P depend only on the direction of (α, β), up to sign.
    let mut groups: BTreeMap<(i64, i64), Vec<Node>> = BTreeMap::new();
    let mut flat: Vec<(f64, f64)> = Vec::new();
    let (mut used, mut skipped) = (0usize, 0usize);
    let mut edge = false;
    for i in -iu..=iu {
        let u = i as f64 * d;
        for j in -iq..=iq {
            let q = j as f64 * d;
            let s = operator_symbol(sym, p, &PhasePoint::line(u, q))?;
            let lam = s.grad_u.hypot(s.grad_q);
            let negligible = if lam == 0.0 { s.c0 >= 0.0 } else { s.c0 / (lam * width) > SKIP_WIDTHS };
            if negligible {
                skipped += 1;
                continue;
            }
            used += 1;
            edge |= j.abs() == iq;
            if lam == 0.0 {
                flat.push((u, q));
                continue;
            }
            let (mut cu, mut cq) = (s.grad_u / lam, s.grad_q / lam);
            let flipped = cq < 0.0 || (cq == 0.0 && cu < 0.0);
            if flipped {
                cu = -cu;
                cq = -cq;
            }
            let key = ((cu * DIRECTION_SCALE).round() as i64, (cq * DIRECTION_SCALE).round() as i64);
            // D_q* (P - q) D_q = P, so the projection is taken at momentum origin
            let shift = s.c0 - s.grad_u * u;
            groups.entry(key).or_default().push(Node { u, q, shift, lam, flipped });
        }
    }
    if edge {
        detail.push("momentum nodes reach 90% of the Nyquist momentum".into());
    }

    let add_node = |acc: &mut DMatrix<C64>, u: f64, q: f64, v: &DMatrix<C64>| {
        let (lo, hi) = lat.active_range(p, u);
        if hi <= lo || v.ncols() == 0 {
            return;
        }
        let m = hi - lo;
        let k = lat.kernel_block(p, u, lo, hi);
        let vb = v.rows(lo, m);
        let br = &k * vb.map(|z| z.re);
        let bi = &k * vb.map(|z| z.im);
        let re = &br * br.transpose() + &bi * bi.transpose();
        let im = &bi * br.transpose() - &br * bi.transpose();
        let md = lat.modulation(q);
        for c in 0..m {
            let mc = md[lo + c].conj();
            for r in 0..m {
                acc[(lo + r, lo + c)] += C64::new(re[(r, c)], im[(r, c)]) * md[lo + r] * mc;
            }
        }
    };

    let group_list: Vec<((i64, i64), Vec<Node>)> = groups.into_iter().collect();
    let partials: Vec<DMatrix<C64>> = group_list
        .par_chunks(8)
        .map(|chunk| {
            let mut acc = DMatrix::from_element(n, n, C64::from(0.0));
            for ((ku, kq), nodes) in chunk {
                let (cu, cq) = (*ku as f64 / DIRECTION_SCALE, *kq as f64 / DIRECTION_SCALE);
                let norm = cu.hypot(cq);
                let mut r = &pm * C64::from(cq / norm);
                for (i, &x) in lat.x.iter().enumerate() {
                    r[(i, i)] += C64::from(cu / norm * x);
                }
                let eig = hermitize(r).symmetric_eigen();
                for node in nodes {
                    let sign = if node.flipped { -1.0 } else { 1.0 };
                    let neg: Vec<usize> =
                        (0..n).filter(|&i| node.shift + node.lam * sign * eig.eigenvalues[i] < 0.0).collect();
                    let v = eig.eigenvectors.select_columns(&neg);
                    add_node(&mut acc, node.u, node.q, &v);
                }
            }
            acc
        })
        .collect();
    let mut gamma = DMatrix::from_element(n, n, C64::from(0.0));
    for part in partials {
        gamma += part;
    }
    let identity = DMatrix::<C64>::identity(n, n);
    for &(u, q) in &flat {
        add_node(&mut gamma, u, q, &identity);
    }
    gamma *= C64::from(d * d / (2.0 * std::f64::consts::PI * p.h()));
    Ok(TrialDensity {
        gamma: GridOperator::new(hermitize(gamma), grid.clone(), p.h())?,
        nodes_used: used,
        nodes_skipped: skipped,
        spacing: d,
        under_resolved: !detail.is_empty(),
        detail,
    })
}

/// Periodic grid of spacing `h/3` covering the support plus `4σ`.
pub fn trial_grid(p: &CoherentParams, support_radius: f64) -> Result<Grid1D> {
    let dx = p.h() / 3.0;
    periodic_grid(support_radius + 4.0 * p.sigma() + dx, dx)
}

/// Energy and spectral bounds of a trial density for `H = F(P) + V(x)`.
pub fn trial_summary(sym: &ClassicalSymbol, t: &TrialDensity) -> Result<TrialSummary> {
    let hop = GridOperator::schrodinger(sym, &t.gamma.grid, t.gamma.h)?;
    let ev = t.gamma.eigenvalues();
    Ok(TrialSummary {
        h: t.gamma.h,
        trace_h_gamma: hop.trace_product(&t.gamma),
        negative_trace: hop.negative_trace(),
        min_eigenvalue: ev[0],
        max_eigenvalue: ev[ev.len() - 1],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_trial_density_is_admissible_and_variational() {
        let h = 0.2;
        let p = CoherentParams::new(h, h.powf(-0.8), 1).unwrap();
        let g = trial_grid(&p, 2.0).unwrap();
        let sym = ClassicalSymbol::harmonic(-1.0);
        let t = trial_density_matrix(&sym, &p, &g, 2.0).unwrap();
        assert!(!t.under_resolved, "{:?}", t.detail);
        let s = trial_summary(&sym, &t).unwrap();
        assert!(s.min_eigenvalue >= -1e-6 && s.max_eigenvalue <= 1.0 + 1e-6, "{s:?}");
        assert!(s.trace_h_gamma >= s.negative_trace);
        let weyl = -1.0 / (4.0 * h);
        let ratio = (s.trace_h_gamma - weyl) / h.powf(0.2);
        assert!(ratio > 0.5 && ratio < 2.0, "{ratio}");
    }

    #[test]
    fn far_positive_symbol_gives_zero() {
        let h = 0.4;
        let p = CoherentParams::new(h, h.powf(-0.8), 1).unwrap();
        let g = trial_grid(&p, 2.0).unwrap();
        let t = trial_density_matrix(&ClassicalSymbol::harmonic(50.0), &p, &g, 2.0).unwrap();
        assert_eq!(t.nodes_used, 0);
        assert!(t.gamma.matrix.iter().all(|z| z.norm() == 0.0));
    }
}
