use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};

use super::params::CoherentParams;
use crate::error::{Error, Result};
use crate::numerics::{Grid1D, GridKind};

pub type C64 = Complex<f64>;

/// Uniform grid viewed as periodic, with its DFT-dual momentum nodes.
///
/// Momenta `q_j = h k_j` fill the Brillouin zone; for even `N` both Nyquist
/// points carry half weight. Weights are `Δq/(2πh) = 1/(N dx)`.
#[derive(Debug, Clone)]
pub(crate) struct Lattice {
    pub x: Vec<f64>,
    pub dx: f64,
    pub h: f64,
    pub q: Vec<f64>,
    pub w: Vec<f64>,
}

impl Lattice {
    pub fn new(grid: &Grid1D, h: f64) -> Result<Self> {
        if grid.kind() != GridKind::Uniform {
            return Err(Error::invalid("phase-space realizations need a uniform grid"));
        }
        let n = grid.len();
        let dx = grid.spacing();
        let base = 1.0 / (n as f64 * dx);
        let dk = 2.0 * PI / (n as f64 * dx);
        let (mut q, mut w) = (Vec::with_capacity(n + 1), Vec::with_capacity(n + 1));
        let half = (n / 2) as i64;
        let lo = if n.is_multiple_of(2) { -half + 1 } else { -half };
        for j in lo..=half {
            if n.is_multiple_of(2) && j == half {
                q.push(h * dk * j as f64);
                w.push(0.5 * base);
                q.push(-h * dk * j as f64);
                w.push(0.5 * base);
            } else {
                q.push(h * dk * j as f64);
                w.push(base);
            }
        }
        Ok(Lattice { x: grid.points().to_vec(), dx, h, q, w })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    /// Largest representable momentum `πh/dx`.
    pub fn nyquist(&self) -> f64 {
        PI * self.h / self.dx
    }

    /// `S(m) = Σ_j w_j g(q_j) e^{i q_j m dx / h}` for `m = 0..N`, over arbitrary nodes.
    pub fn toeplitz_symbol_nodes(&self, q: &[f64], w: &[f64], g: impl Fn(f64) -> C64) -> Vec<C64> {
        let gw: Vec<C64> = q.iter().zip(w).map(|(&qj, &wj)| g(qj) * wj).collect();
        (0..self.len())
            .map(|m| {
                let t = m as f64 * self.dx / self.h;
                q.iter().zip(&gw).map(|(&qj, &c)| c * C64::from_polar(1.0, qj * t)).sum()
            })
            .collect()
    }

    pub fn toeplitz_symbol(&self, g: impl Fn(f64) -> C64) -> Vec<C64> {
        self.toeplitz_symbol_nodes(&self.q, &self.w, g)
    }

    /// Matrix `T_ij = S(i - j)`, using `S(-m) = S(N - m)` on the dual nodes.
    pub fn circulant(&self, s: &[C64]) -> DMatrix<C64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| if i >= j { s[i - j] } else { s[n + i - j] })
    }

    /// `T_ij = S(i - j)` for arbitrary nodes, where `S(-m) = conj(S̄(m))` with `S̄` built from `conj ∘ g`.
    pub fn toeplitz_nodes(&self, q: &[f64], w: &[f64], g: impl Fn(f64) -> C64 + Copy) -> DMatrix<C64> {
        let n = self.len();
        let pos = self.toeplitz_symbol_nodes(q, w, g);
        let neg = self.toeplitz_symbol_nodes(q, w, |x| g(x).conj());
        DMatrix::from_fn(n, n, |i, j| if i >= j { pos[i - j] } else { neg[j - i].conj() })
    }

    /// Operator matrix of `g(-ih∂)`.
    pub fn multiplier(&self, g: impl Fn(f64) -> C64) -> DMatrix<C64> {
        self.circulant(&self.toeplitz_symbol(g)) * C64::from(self.dx)
    }

    pub fn multiplier_real(&self, g: impl Fn(f64) -> f64) -> DMatrix<C64> {
        let m = self.multiplier(|q| C64::from(g(q)));
        hermitize(m)
    }

    /// Index range `[lo, hi)` where the kernel centred at `u` is above `e^{-40}`.
    pub fn active_range(&self, p: &CoherentParams, u: f64) -> (usize, usize) {
        let reach = (40.0 / p.a()).sqrt() + p.h() * (40.0 * p.a()).sqrt();
        let lo = self.x.partition_point(|&x| x < u - reach);
        let hi = self.x.partition_point(|&x| x <= u + reach);
        (lo, hi)
    }

    /// Operator matrix of `K_u = 𝒢_{u,0}` restricted to `[lo, hi)`.
    pub fn kernel_block(&self, p: &CoherentParams, u: f64, lo: usize, hi: usize) -> DMatrix<f64> {
        let (h, a) = (p.h(), p.a());
        let pref = (PI * h).powf(-0.5) * self.dx;
        let n = hi - lo;
        DMatrix::from_fn(n, n, |i, j| {
            let (x, y) = (self.x[lo + i], self.x[lo + j]);
            let m = 0.5 * (x + y) - u;
            let d = x - y;
            pref * (-a * m * m - d * d / (4.0 * h * h * a)).exp()
        })
    }

    /// Modulation `e^{iqx/h}` on the grid.
    pub fn modulation(&self, q: f64) -> Vec<C64> {
        self.x.iter().map(|&x| C64::from_polar(1.0, q * x / self.h)).collect()
    }
}

pub(crate) fn hermitize(m: DMatrix<C64>) -> DMatrix<C64> {
    (&m + m.adjoint()) * C64::from(0.5)
}

/// Grid `x_i = (i - N/2) dx` with `N = round(2 half_width / dx)`.
pub fn periodic_grid(half_width: f64, dx: f64) -> Result<Grid1D> {
    if !(half_width > 0.0 && dx > 0.0) {
        return Err(Error::invalid("periodic grid needs positive half-width and spacing"));
    }
    let n = (2.0 * half_width / dx).round() as usize;
    Grid1D::uniform_from(-((n / 2) as f64) * dx, dx, n)
}
