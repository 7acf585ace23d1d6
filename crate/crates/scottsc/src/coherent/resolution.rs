use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::lattice::{Lattice, C64};
use super::params::CoherentParams;
use crate::error::{Error, Result};
use crate::numerics::Grid1D;

/// Tensor phase-space quadrature: uniform `u` nodes, and `q` nodes either
/// dual to the grid or uniform.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseQuadrature {
    pub u: Vec<f64>,
    pub du: f64,
    pub q: QNodes,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QNodes {
    /// The DFT-dual momenta of the grid, covering the whole Brillouin zone.
    Dual,
    Uniform { nodes: Vec<f64>, dq: f64 },
}

fn centred(lo: f64, hi: f64, d: f64) -> Vec<f64> {
    let (i0, i1) = ((lo / d).floor() as i64, (hi / d).ceil() as i64);
    (i0..=i1).map(|i| i as f64 * d).collect()
}

impl PhaseQuadrature {
    /// `u` spacing `spacing_in_sigma · σ` covering the grid plus `7σ`, dual `q` nodes.
    pub fn adapted(p: &CoherentParams, grid: &Grid1D, spacing_in_sigma: f64) -> Result<Self> {
        if !(spacing_in_sigma > 0.0) {
            return Err(Error::invalid("quadrature spacing must be positive"));
        }
        let s = p.sigma();
        let du = spacing_in_sigma * s;
        Ok(PhaseQuadrature { u: centred(grid.first() - 7.0 * s, grid.last() + 7.0 * s, du), du, q: QNodes::Dual })
    }

    /// `nu × nq` uniform nodes on `[-u_max, u_max] × [-q_max, q_max]`.
    pub fn tensor(u_max: f64, nu: usize, q_max: f64, nq: usize) -> Result<Self> {
        if nu < 2 || nq < 2 || !(u_max > 0.0 && q_max > 0.0) {
            return Err(Error::invalid("tensor quadrature needs at least 2 nodes per axis and positive extent"));
        }
        let du = 2.0 * u_max / (nu - 1) as f64;
        let dq = 2.0 * q_max / (nq - 1) as f64;
        Ok(PhaseQuadrature {
            u: (0..nu).map(|i| -u_max + du * i as f64).collect(),
            du,
            q: QNodes::Uniform { nodes: (0..nq).map(|i| -q_max + dq * i as f64).collect(), dq },
        })
    }

    pub fn node_count(&self, lattice_len: usize) -> usize {
        let nq = match &self.q {
            QNodes::Dual => lattice_len,
            QNodes::Uniform { nodes, .. } => nodes.len(),
        };
        self.u.len() * nq
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResolutionReport {
    /// `‖∫𝒢²ψ/(2πh) - ψ‖ / ‖ψ‖`.
    pub deviation: f64,
    pub under_resolved: bool,
    pub detail: Vec<String>,
    pub nodes: usize,
}

/// Extent `[lo, hi]` holding all but `e^{-40}` of a nonnegative profile's peak.
fn support(x: &[f64], mass: &[f64]) -> Option<(f64, f64)> {
    let peak = mass.iter().copied().fold(0.0, f64::max);
    if peak == 0.0 {
        return None;
    }
    let cut = peak * (-40f64).exp();
    let lo = mass.iter().position(|&m| m > cut)?;
    let hi = mass.iter().rposition(|&m| m > cut)?;
    Some((x[lo], x[hi]))
}

/// Phase-space quadrature of `∫ 𝒢²_{u,q} ψ du dq/(2πh)` compared with `ψ`.
pub fn resolution_of_identity_check(
    p: &CoherentParams,
    grid: &Grid1D,
    psi: &[C64],
    quad: &PhaseQuadrature,
) -> Result<ResolutionReport> {
    if p.n() != 1 {
        return Err(Error::invalid("phase-space quadrature is realized on the line only"));
    }
    if psi.len() != grid.len() {
        return Err(Error::invalid("test vector length does not match the grid"));
    }
    let lat = Lattice::new(grid, p.h())?;
    let n = lat.len();
    let s = p.sigma();
    let mut detail = Vec::new();

    let (qs, ws): (Vec<f64>, Vec<f64>) = match &quad.q {
        QNodes::Dual => (lat.q.clone(), lat.w.clone()),
        QNodes::Uniform { nodes, dq } => {
            if *dq > s {
                detail.push(format!("q spacing {dq:.3e} exceeds sigma {s:.3e}"));
            }
            (nodes.clone(), vec![dq / (2.0 * std::f64::consts::PI * p.h()); nodes.len()])
        }
    };
    if quad.du > s {
        detail.push(format!("u spacing {:.3e} exceeds sigma {s:.3e}", quad.du));
    }
    let psi_norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if psi_norm > 0.0 {
        let mass: Vec<f64> = psi.iter().map(|z| z.norm_sqr()).collect();
        if let Some((lo, hi)) = support(&lat.x, &mass) {
            let (u0, u1) = (quad.u.first().copied().unwrap_or(0.0), quad.u.last().copied().unwrap_or(0.0));
            if u0 > lo - 7.0 * s || u1 < hi + 7.0 * s {
                detail.push(format!("u nodes [{u0:.3}, {u1:.3}] do not cover [{lo:.3}, {hi:.3}] plus 7 sigma"));
            }
        }
        if let QNodes::Uniform { nodes, .. } = &quad.q {
            let spec: Vec<f64> = lat
                .q
                .iter()
                .map(|&q| {
                    psi.iter().zip(&lat.x).map(|(z, &x)| z * C64::from_polar(1.0, -q * x / p.h())).sum::<C64>().norm_sqr()
                })
                .collect();
            if let Some((lo, hi)) = support(&lat.q, &spec) {
                let (q0, q1) = (nodes[0], nodes[nodes.len() - 1]);
                if q0 > lo - 7.0 * s || q1 < hi + 7.0 * s {
                    detail.push(format!("q nodes [{q0:.3}, {q1:.3}] do not cover [{lo:.3}, {hi:.3}] plus 7 sigma"));
                }
            }
        }
    }

    let t = lat.toeplitz_nodes(&qs, &ws, |_| C64::from(1.0));
    let psi_v = DVector::from_column_slice(psi);
    let mut out = DVector::from_element(n, C64::from(0.0));
    for &u in &quad.u {
        let (lo, hi) = lat.active_range(p, u);
        if hi <= lo {
            continue;
        }
        let k = lat.kernel_block(p, u, lo, hi);
        let a: DMatrix<C64> = (&k * &k).map(C64::from);
        let tb = t.view((lo, lo), (hi - lo, hi - lo));
        let block = a.component_mul(&tb);
        let r = block * psi_v.rows(lo, hi - lo);
        let mut o = out.rows_mut(lo, hi - lo);
        o.axpy(C64::from(quad.du), &r, C64::from(1.0));
    }
    let deviation = if psi_norm == 0.0 { 0.0 } else { (out - psi_v).norm() / psi_norm };
    Ok(ResolutionReport { deviation, under_resolved: !detail.is_empty(), detail, nodes: quad.node_count(n) })
}
