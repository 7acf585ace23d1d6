use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lattice::{hermitize, periodic_grid, Lattice, C64};
use super::params::CoherentParams;
use super::symbol::ClassicalSymbol;
use crate::error::{Error, Result};
use crate::numerics::{make_bump, Grid1D};

/// Window and error norms of `H - ∫𝒢Ĥ𝒢 du dq/(2πh)` on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationReport {
    pub h: f64,
    pub a: f64,
    pub b: f64,
    /// Spectral norm of the windowed error `W*(H - M)W`.
    pub error_norm: f64,
    /// Spectral norm of the windowed closed form `-(h²a/2)(F''(P) + V''(x))`.
    pub closed_form_norm: f64,
    /// Spectral norm of the windowed difference between the two.
    pub discrepancy: f64,
    pub grid_points: usize,
    pub u_nodes: usize,
    /// Position window: `χ ≡ 1` for `|x| ≤ window_radius/2`, `0` beyond `window_radius`.
    pub window_radius: f64,
    /// Momentum window radius, same plateau convention.
    pub momentum_window: f64,
    pub under_resolved: bool,
}

/// Distance from the grid edge inside which the truncated kernel products are unreliable.
pub fn representation_margin(p: &CoherentParams) -> f64 {
    2.0 * p.h() * (40.0 * p.a()).sqrt() + 4.0 * p.sigma()
}

/// Periodic grid with spacing `h/4` whose window plateau is `|x| ≤ core`.
pub fn representation_grid(p: &CoherentParams, core: f64) -> Result<Grid1D> {
    periodic_grid(2.0 * core + representation_margin(p), p.h() / 4.0)
}

/// Assembles `M = ∫ 𝒢_{u,q} Ĥ_{u,q} 𝒢_{u,q} du dq/(2πh)` over dual `q` nodes.
///
/// With `𝒢_{u,q} = D_q K_u D_q*` and `D_q* (P - q) D_q = P`, each `u` contributes
/// Toeplitz-weighted blocks `K²∘S[F + F''/4b] + KPK∘S[F']` plus a diagonal from the
/// `V` terms, since the dual nodes integrate `e^{iq(x-y)/h}` to `δ/dx`.
pub(crate) fn assemble_representation(
    sym: &ClassicalSymbol,
    p: &CoherentParams,
    lat: &Lattice,
    us: &[f64],
    du: f64,
) -> DMatrix<C64> {
    let n = lat.len();
    let b = p.b();
    let t0 = lat.circulant(&lat.toeplitz_symbol(|q| {
        let f = sym.f_jet(q);
        C64::from(f[0] + f[2] / (4.0 * b))
    }));
    let t1 = lat.circulant(&lat.toeplitz_symbol(|q| C64::from(sym.f_jet(q)[1])));
    let pm = lat.multiplier_real(|q| q);
    let p_re = pm.map(|z| z.re);
    let p_im = pm.map(|z| z.im);
    let has_re = p_re.amax() > 0.0;
    let dx = lat.dx;

    let partials: Vec<DMatrix<C64>> = us
        .par_chunks(8)
        .map(|chunk| {
            let mut acc = DMatrix::from_element(n, n, C64::from(0.0));
            for &u in chunk {
                let (lo, hi) = lat.active_range(p, u);
                if hi <= lo {
                    continue;
                }
                let m = hi - lo;
                let k = lat.kernel_block(p, u, lo, hi);
                let a = &k * &k;
                let c_im = &k * p_im.view((lo, lo), (m, m)) * &k;
                let c_re = if has_re { Some(&k * p_re.view((lo, lo), (m, m)) * &k) } else { None };
                let vj = sym.v_jet(u);
                let cv = vj[0] + vj[2] / (4.0 * b);
                for j in 0..m {
                    for i in 0..m {
                        let c = C64::new(c_re.as_ref().map_or(0.0, |r| r[(i, j)]), c_im[(i, j)]);
                        acc[(lo + i, lo + j)] +=
                            (t0[(lo + i, lo + j)] * a[(i, j)] + t1[(lo + i, lo + j)] * c) * du;
                    }
                }
                for i in 0..m {
                    let bx: f64 = (0..m).map(|z| k[(i, z)] * lat.x[lo + z] * k[(z, i)]).sum();
                    let diag = cv * a[(i, i)] + vj[1] * (bx - u * a[(i, i)]);
                    acc[(lo + i, lo + i)] += C64::from(diag * du / dx);
                }
            }
            acc
        })
        .collect();
    let mut total = DMatrix::from_element(n, n, C64::from(0.0));
    for part in partials {
        total += part;
    }
    hermitize(total)
}

fn max_abs_eigenvalue(m: DMatrix<C64>) -> f64 {
    hermitize(m).symmetric_eigenvalues().iter().fold(0.0, |acc, &l| acc.max(l.abs()))
}

/// Measures the representation error in a phase-space window of the grid.
///
/// Positions within `representation_margin` of the grid edge and momenta above
/// 40% of the Nyquist momentum are excluded by smooth windows. For symbols of
/// degree at most three the error is exactly `-(h²a/2)(F''(P) + V''(x))`; that
/// closed form is windowed the same way and compared.
pub fn representation_error_norm(sym: &ClassicalSymbol, p: &CoherentParams, grid: &Grid1D) -> Result<RepresentationReport> {
    if p.n() != 1 {
        return Err(Error::invalid("the representation is realized on the line only"));
    }
    let lat = Lattice::new(grid, p.h())?;
    let half = grid.first().abs().min(grid.last());
    let window_radius = half - representation_margin(p);
    if window_radius <= 0.0 {
        return Err(Error::invalid(format!(
            "grid half-width {half:.3} leaves no window beyond the margin {:.3}",
            representation_margin(p)
        )));
    }
    let under_resolved = lat.dx > 0.5 * p.h().min(1.0 / p.b().sqrt());
    let s = p.sigma();
    let du = 0.5 * s;
    let (i0, i1) = (((grid.first() - 7.0 * s) / du).floor() as i64, ((grid.last() + 7.0 * s) / du).ceil() as i64);
    let us: Vec<f64> = (i0..=i1).map(|i| i as f64 * du).collect();

    let m = assemble_representation(sym, p, &lat, &us, du);
    let mut hmat = lat.multiplier_real(|q| sym.f_jet(q)[0]);
    let mut closed = lat.multiplier_real(|q| sym.f_jet(q)[2]);
    for (i, &x) in lat.x.iter().enumerate() {
        let v = sym.v_jet(x);
        hmat[(i, i)] += C64::from(v[0]);
        closed[(i, i)] += C64::from(v[2]);
    }
    closed *= C64::from(-0.5 * p.h() * p.h() * p.a());
    let err = hmat - m;

    let xw = make_bump(&[0.0], window_radius, 3)?;
    let momentum_window = 0.8 * lat.nyquist();
    let pw = make_bump(&[0.0], momentum_window, 3)?;
    let mp = lat.multiplier_real(|q| pw.radial(q.abs()));
    let chi: Vec<f64> = lat.x.iter().map(|&x| xw.radial(x.abs())).collect();
    let w = DMatrix::from_fn(lat.len(), lat.len(), |i, j| mp[(i, j)] * chi[j]);
    let wa = w.adjoint();
    let sandwich = |e: &DMatrix<C64>| &wa * e * &w;
    let error_norm = max_abs_eigenvalue(sandwich(&err));
    let closed_form_norm = max_abs_eigenvalue(sandwich(&closed));
    let discrepancy = max_abs_eigenvalue(sandwich(&(err - closed)));
    Ok(RepresentationReport {
        h: p.h(),
        a: p.a(),
        b: p.b(),
        error_norm,
        closed_form_norm,
        discrepancy,
        grid_points: lat.len(),
        u_nodes: us.len(),
        window_radius,
        momentum_window,
        under_resolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(sym: &ClassicalSymbol, h: f64, expo: f64) -> RepresentationReport {
        let p = CoherentParams::new(h, h.powf(expo), 1).unwrap();
        representation_error_norm(sym, &p, &representation_grid(&p, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn constant_symbol_is_exact() {
        let r = report(&ClassicalSymbol::polynomial(&[5.0], &[0.0]), 0.4, -0.8);
        assert!(r.error_norm < 1e-8, "{r:?}");
    }

    #[test]
    fn harmonic_error_matches_closed_form() {
        let r = report(&ClassicalSymbol::harmonic(0.0), 0.4, -0.8);
        assert!(r.discrepancy < 1e-9 * r.closed_form_norm, "{r:?}");
        assert!(((r.error_norm / (2.0 * r.h * r.h * r.a)) - 1.0).abs() < 1e-6);
        assert!(!r.under_resolved);
    }

    #[test]
    fn cubic_error_matches_closed_form() {
        let r = report(&ClassicalSymbol::polynomial(&[0.0, 0.0, 1.0], &[0.0, 0.0, 0.0, 1.0]), 0.4, -0.6);
        assert!(r.discrepancy < 1e-9 * r.closed_form_norm, "{r:?}");
    }

    #[test]
    fn grid_too_small() {
        let p = CoherentParams::new(0.4, 0.4f64.powf(-0.8), 1).unwrap();
        let g = periodic_grid(2.0, 0.1).unwrap();
        assert!(representation_error_norm(&ClassicalSymbol::harmonic(0.0), &p, &g).is_err());
    }
}
