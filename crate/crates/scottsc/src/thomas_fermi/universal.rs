//! The universal Thomas-Fermi function: `φ'' = φ^{3/2}/√x`, `φ(0) = 1`, `φ(∞) = 0`.

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tabulated solution on a uniform grid in `s = ln x`, with `p = xφ'`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniversalTf {
    s0: f64,
    ds: f64,
    phi: Vec<f64>,
    p: Vec<f64>,
    /// `φ'(0)` from the inward table.
    pub initial_slope: f64,
    /// `φ'(0)` from outward shooting.
    pub shooting_slope: f64,
}

const X_START: f64 = 1.0e4;
const X_MIN: f64 = 1.0e-10;
const DS: f64 = 1.0e-3;
// exponent of the scale mode in the large-x expansion 144/x³ (1 - F x^{-λ} + ...)
fn lambda_exp() -> f64 {
    (73f64.sqrt() - 7.0) / 2.0
}

fn rhs(s: f64, phi: f64, p: f64) -> (f64, f64) {
    let xphi = (s.exp() * phi).max(0.0);
    (p, p + xphi * xphi.sqrt())
}

fn rk4(s: f64, y: (f64, f64), h: f64) -> (f64, f64) {
    let k1 = rhs(s, y.0, y.1);
    let k2 = rhs(s + 0.5 * h, y.0 + 0.5 * h * k1.0, y.1 + 0.5 * h * k1.1);
    let k3 = rhs(s + 0.5 * h, y.0 + 0.5 * h * k2.0, y.1 + 0.5 * h * k2.1);
    let k4 = rhs(s + h, y.0 + h * k3.0, y.1 + h * k3.1);
    (
        y.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
        y.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
    )
}

/// Inward integration from the asymptotic tail, then exact rescaling to `φ(0) = 1`.
///
/// The family `μ³Φ(μx)` solves the same equation, so any member reached from
/// the tail is mapped onto the normalized solution by one dilation.
fn inward_table(ds: f64) -> (f64, Vec<f64>, Vec<f64>) {
    let lam = lambda_exp();
    let f = 13.27;
    let x = X_START;
    let phi0 = 144.0 / x.powi(3) * (1.0 - f * x.powf(-lam));
    let p0 = -432.0 / x.powi(3) + 144.0 * f * (3.0 + lam) * x.powf(-3.0 - lam);
    let s_hi = x.ln();
    let steps = ((s_hi - X_MIN.ln()) / ds).ceil() as usize;
    let mut phi = vec![0.0; steps + 1];
    let mut p = vec![0.0; steps + 1];
    phi[steps] = phi0;
    p[steps] = p0;
    let mut y = (phi0, p0);
    for k in (0..steps).rev() {
        let s = s_hi - ds * (steps - k - 1) as f64;
        y = rk4(s, y, -ds);
        phi[k] = y.0;
        p[k] = y.1;
    }
    let s0 = s_hi - ds * steps as f64;
    // Φ(0) from φ - xφ' = Φ(0) - (2/3)Φ(0)^{3/2} x^{3/2}
    let x0 = s0.exp();
    let mut big_phi0 = phi[0] - p[0];
    for _ in 0..3 {
        big_phi0 = phi[0] - p[0] + (2.0 / 3.0) * big_phi0.powf(1.5) * x0.powf(1.5);
    }
    let mu = big_phi0.powf(-1.0 / 3.0);
    let m3 = mu.powi(3);
    phi.iter_mut().for_each(|v| *v *= m3);
    p.iter_mut().for_each(|v| *v *= m3);
    (s0 - mu.ln(), phi, p)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shot {
    TooSteep,
    TooShallow,
    Undecided,
}

/// Outward integration in `t = √x` with `φ_t = 2tψ`, `ψ_t = 2φ^{3/2}`.
fn shoot(slope: f64, dt: f64, t_max: f64) -> Shot {
    let f = |t: f64, phi: f64, psi: f64| (2.0 * t * psi, 2.0 * phi.max(0.0).powf(1.5));
    let (mut t, mut phi, mut psi) = (0.0, 1.0, slope);
    while t < t_max {
        let k1 = f(t, phi, psi);
        let k2 = f(t + 0.5 * dt, phi + 0.5 * dt * k1.0, psi + 0.5 * dt * k1.1);
        let k3 = f(t + 0.5 * dt, phi + 0.5 * dt * k2.0, psi + 0.5 * dt * k2.1);
        let k4 = f(t + dt, phi + dt * k3.0, psi + dt * k3.1);
        phi += dt / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        psi += dt / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        t += dt;
        if phi <= 0.0 {
            return Shot::TooSteep;
        }
        if psi >= 0.0 {
            return Shot::TooShallow;
        }
    }
    Shot::Undecided
}

/// Initial slope separating solutions that cross zero from those that turn up.
pub fn shoot_initial_slope(tolerance: f64, dt: f64) -> Result<f64> {
    let t_max = 100.0;
    let (mut lo, mut hi) = (-2.0, -1.0);
    if shoot(lo, dt, t_max) != Shot::TooSteep || shoot(hi, dt, t_max) != Shot::TooShallow {
        return Err(Error::SolverFailure("Thomas-Fermi shooting bracket not found".into()));
    }
    while hi - lo > tolerance {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match shoot(mid, dt, t_max) {
            Shot::TooSteep => lo = mid,
            Shot::TooShallow => hi = mid,
            Shot::Undecided => break,
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn solve_universal_tf(tolerance: f64) -> Result<UniversalTf> {
    if !(tolerance > 0.0 && tolerance.is_finite()) {
        return Err(Error::invalid(format!("tolerance must be positive, got {tolerance}")));
    }
    let (s0, phi, p) = inward_table(DS);
    let x0 = s0.exp();
    let initial_slope = (p[0] - 2.0 * x0.powf(1.5)) / x0;
    let shooting_slope = shoot_initial_slope(tolerance.max(1e-13), 2e-3)?;
    let agreement = tolerance.max(1e-7);
    if (initial_slope - shooting_slope).abs() > agreement {
        return Err(Error::SolverFailure(format!(
            "inward table slope {initial_slope} and shooting slope {shooting_slope} disagree"
        )));
    }
    if phi.iter().any(|v| !(v.is_finite() && *v > 0.0)) || phi.windows(2).any(|w| w[1] > w[0]) {
        return Err(Error::SolverFailure("Thomas-Fermi table not positive and decreasing".into()));
    }
    Ok(UniversalTf { s0, ds: DS, phi, p, initial_slope, shooting_slope })
}

/// Shared solution at default tolerance.
pub fn universal_tf() -> Result<Arc<UniversalTf>> {
    static CELL: OnceLock<std::result::Result<Arc<UniversalTf>, String>> = OnceLock::new();
    CELL.get_or_init(|| solve_universal_tf(1e-9).map(Arc::new).map_err(|e| e.to_string()))
        .clone()
        .map_err(Error::SolverFailure)
}

fn hermite(y0: f64, y1: f64, d0: f64, d1: f64, h: f64, u: f64) -> f64 {
    let u2 = u * u;
    let u3 = u2 * u;
    (2.0 * u3 - 3.0 * u2 + 1.0) * y0 + (u3 - 2.0 * u2 + u) * h * d0 + (-2.0 * u3 + 3.0 * u2) * y1 + (u3 - u2) * h * d1
}

impl UniversalTf {
    pub fn x_min(&self) -> f64 {
        self.s0.exp()
    }

    pub fn x_max(&self) -> f64 {
        (self.s0 + self.ds * (self.phi.len() - 1) as f64).exp()
    }

    /// Table nodes `(x, φ, xφ')`.
    pub fn table(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        (0..self.phi.len()).map(move |i| ((self.s0 + self.ds * i as f64).exp(), self.phi[i], self.p[i]))
    }

    fn locate(&self, x: f64) -> (usize, f64) {
        let u = (x.ln() - self.s0) / self.ds;
        let i = (u.floor() as usize).min(self.phi.len() - 2);
        (i, u - i as f64)
    }

    pub fn phi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 1.0;
        }
        if x < self.x_min() {
            return 1.0 + self.initial_slope * x + 4.0 / 3.0 * x * x.sqrt();
        }
        let n = self.phi.len();
        if x >= self.x_max() {
            return self.phi[n - 1] * (self.x_max() / x).powi(3);
        }
        let (i, u) = self.locate(x);
        hermite(self.phi[i], self.phi[i + 1], self.p[i], self.p[i + 1], self.ds, u)
    }

    /// `φ'(x)`.
    pub fn dphi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.initial_slope;
        }
        if x < self.x_min() {
            return self.initial_slope + 2.0 * x.sqrt();
        }
        let n = self.phi.len();
        if x >= self.x_max() {
            return -3.0 * self.phi[n - 1] * self.x_max().powi(3) / x.powi(4);
        }
        let (i, u) = self.locate(x);
        let dp = |k: usize| {
            let xs = (self.s0 + self.ds * k as f64).exp() * self.phi[k];
            self.p[k] + xs * xs.sqrt()
        };
        hermite(self.p[i], self.p[i + 1], dp(i), dp(i + 1), self.ds, u) / x
    }

    /// `φ''(x) = φ^{3/2}/√x`.
    pub fn d2phi(&self, x: f64) -> f64 {
        self.phi(x).max(0.0).powf(1.5) / x.sqrt()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_and_slope() {
        let u = universal_tf().unwrap();
        assert!((u.phi(0.0) - 1.0).abs() < 1e-15);
        assert!((u.phi(u.x_min() * 1.0000001) - 1.0).abs() < 1e-9);
        assert!((u.initial_slope + 1.588071).abs() < 1e-6, "{}", u.initial_slope);
        assert!((u.initial_slope - u.shooting_slope).abs() < 1e-7);
    }

    #[test]
    fn table_is_monotone_and_positive() {
        let u = universal_tf().unwrap();
        let mut last = f64::INFINITY;
        for (_, phi, p) in u.table() {
            assert!(phi > 0.0 && phi < last && p < 0.0);
            last = phi;
        }
    }

    #[test]
    fn interpolation_satisfies_ode() {
        let u = universal_tf().unwrap();
        for &x in &[1e-3, 0.1, 1.0, 7.3, 50.0, 400.0] {
            let e = 1e-4 * x;
            let fd = (u.dphi(x + e) - u.dphi(x - e)) / (2.0 * e);
            assert!((fd / u.d2phi(x) - 1.0).abs() < 1e-5, "x={x}: {fd} vs {}", u.d2phi(x));
            let fd1 = (u.phi(x + e) - u.phi(x - e)) / (2.0 * e);
            assert!((fd1 / u.dphi(x) - 1.0).abs() < 1e-7);
        }
    }

    #[test]
    fn large_x_approaches_sommerfeld_tail() {
        let u = universal_tf().unwrap();
        for x in [3000.0f64, 8000.0] {
            let lead = 144.0 / x.powi(3) * (1.0 - 13.27 * x.powf(-lambda_exp()));
            assert!((u.phi(x) / lead - 1.0).abs() < 2e-3, "x={x}: {}", u.phi(x) / lead);
        }
    }
}
