use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::coulomb::coulomb_energy_d;
use super::universal::{universal_tf, UniversalTf};
use crate::error::{Error, Result};
use crate::numerics::Grid1D;

/// `½(3π²)^{2/3}`, the TF-equation constant.
pub fn tf_equation_constant() -> f64 {
    0.5 * (3.0 * PI * PI).powf(2.0 / 3.0)
}

/// `(3/10)(3π²)^{2/3}`, the TF kinetic constant.
pub fn tf_kinetic_constant() -> f64 {
    0.3 * (3.0 * PI * PI).powf(2.0 / 3.0)
}

/// Length scale `ℓ_z` with `V^TF(r) = (z/r) φ(r/ℓ_z)`.
///
/// Requiring `ΔV = 4πρ` with `ρ = (2V)^{3/2}/(3π²)` turns the radial equation
/// into `φ'' = φ^{3/2}/√x` exactly when `ℓ_z^{3/2} = 3π / (2^{7/2} z^{1/2})`.
pub fn tf_length_scale(z: f64) -> f64 {
    (3.0 * PI / (2f64.powf(3.5) * z.sqrt())).powf(2.0 / 3.0)
}

/// Density matching a potential through the TF equation.
pub fn tf_density_from_potential(v: f64) -> f64 {
    if v <= 0.0 {
        0.0
    } else {
        (2.0 * v).powf(1.5) / (3.0 * PI * PI)
    }
}

/// Neutral-atom Thomas-Fermi solution on a radial grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TfSolution {
    pub z: f64,
    pub length_scale: f64,
    pub grid: Grid1D,
    pub v_tf: Vec<f64>,
    pub rho_tf: Vec<f64>,
    pub e_tf: f64,
    pub d_rho: f64,
    #[serde(skip)]
    pub(super) universal: Option<Arc<UniversalTf>>,
}

/// Integral of tabulated `g` over `[0, r_end]` with a power-law head `g ~ r^p` below the first node.
pub(crate) fn radial_integral(r: &[f64], g: &[f64], head_power: f64) -> f64 {
    let body = crate::numerics::quadrature::trapezoid(r, g);
    body + r[0] * g[0] / (head_power + 1.0)
}

/// Default logarithmic grid from `10^{-6} ℓ_z` to the radius where `φ < 10^{-8}`.
pub fn default_tf_grid(z: f64, points: usize) -> Result<Grid1D> {
    let b = tf_length_scale(z);
    let x_end = (144.0e8f64).cbrt();
    Grid1D::logarithmic(1e-6 * b, x_end * b, points)
}

pub fn atomic_tf(z: f64, grid: &Grid1D) -> Result<TfSolution> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::invalid(format!("nuclear charge must be positive, got {z}")));
    }
    if grid.first() <= 0.0 {
        return Err(Error::invalid("TF grid must start at r > 0"));
    }
    let u = universal_tf()?;
    let b = tf_length_scale(z);
    let r = grid.points();
    let v_tf: Vec<f64> = r.iter().map(|&r| z / r * u.phi(r / b)).collect();
    let rho_tf: Vec<f64> = v_tf.iter().map(|&v| tf_density_from_potential(v)).collect();
    let mut sol =
        TfSolution { z, length_scale: b, grid: grid.clone(), v_tf, rho_tf, e_tf: 0.0, d_rho: 0.0, universal: Some(u) };
    sol.d_rho = coulomb_energy_d(r, &sol.rho_tf);
    sol.e_tf = sol.kinetic_energy() - sol.attraction_energy() + sol.d_rho;

    if sol.v_tf.iter().chain(&sol.rho_tf).any(|v| !(*v > 0.0)) {
        return Err(Error::Calibration("V_TF and rho_TF must be positive on the grid".into()));
    }
    let pr = sol.poisson_residual();
    if pr > 1e-3 {
        return Err(Error::Calibration(format!("radial Poisson residual {pr:.3e} exceeds 1e-3")));
    }
    let q = sol.charge();
    if (q - z).abs() > 1e-4 * z {
        return Err(Error::Calibration(format!("integrated density {q} differs from z = {z}")));
    }
    Ok(sol)
}

impl TfSolution {
    fn universal(&self) -> Arc<UniversalTf> {
        match &self.universal {
            Some(u) => u.clone(),
            None => universal_tf().expect("universal TF solution available"),
        }
    }

    /// `V^TF(r)` at any `r > 0`.
    pub fn potential(&self, r: f64) -> f64 {
        self.z / r * self.universal().phi(r / self.length_scale)
    }

    pub fn density(&self, r: f64) -> f64 {
        tf_density_from_potential(self.potential(r))
    }

    /// `dV/dr` and `d²V/dr²`.
    pub fn potential_derivatives(&self, r: f64) -> (f64, f64) {
        let u = self.universal();
        let b = self.length_scale;
        let x = r / b;
        let (phi, dphi, d2phi) = (u.phi(x), u.dphi(x), u.d2phi(x));
        let z = self.z;
        let d1 = z * (-phi / (r * r) + dphi / (b * r));
        let d2 = z * (2.0 * phi / r.powi(3) - 2.0 * dphi / (b * r * r) + d2phi / (b * b * r));
        (d1, d2)
    }

    pub fn initial_slope(&self) -> f64 {
        self.universal().initial_slope
    }

    pub fn charge(&self) -> f64 {
        let r = self.grid.points();
        let g: Vec<f64> = r.iter().zip(&self.rho_tf).map(|(r, p)| 4.0 * PI * r * r * p).collect();
        radial_integral(r, &g, 0.5)
    }

    pub fn kinetic_energy(&self) -> f64 {
        let r = self.grid.points();
        let g: Vec<f64> = r.iter().zip(&self.rho_tf).map(|(r, p)| 4.0 * PI * r * r * p.powf(5.0 / 3.0)).collect();
        tf_kinetic_constant() * radial_integral(r, &g, -0.5)
    }

    /// `∫ zρ/|x|`.
    pub fn attraction_energy(&self) -> f64 {
        let r = self.grid.points();
        let g: Vec<f64> = r.iter().zip(&self.rho_tf).map(|(r, p)| 4.0 * PI * r * self.z * p).collect();
        radial_integral(r, &g, -0.5)
    }

    /// `∫ (V^TF)^{5/2} d³x`.
    pub fn potential_moment_5_2(&self) -> f64 {
        let r = self.grid.points();
        let g: Vec<f64> = r.iter().zip(&self.v_tf).map(|(r, v)| 4.0 * PI * r * r * v.powf(2.5)).collect();
        radial_integral(r, &g, -0.5)
    }

    /// `max |V - ½(3π²)^{2/3} ρ^{2/3}| / V` over the grid interior.
    pub fn tf_equation_residual(&self) -> f64 {
        let c = tf_equation_constant();
        let n = self.v_tf.len();
        (1..n - 1)
            .map(|i| (self.v_tf[i] - c * self.rho_tf[i].powf(2.0 / 3.0)).abs() / self.v_tf[i])
            .fold(0.0, f64::max)
    }

    /// Relative `L¹(r² dr)` mismatch between `(1/r)(rV)''` and `4πρ` on the interior.
    pub fn poisson_residual(&self) -> f64 {
        let r = self.grid.points();
        let n = r.len();
        let rv: Vec<f64> = r.iter().zip(&self.v_tf).map(|(r, v)| r * v).collect();
        let (mut num, mut den) = (0.0, 0.0);
        for i in 2..n - 2 {
            let (hm, hp) = (r[i] - r[i - 1], r[i + 1] - r[i]);
            let d2 = 2.0 * ((rv[i + 1] - rv[i]) / hp - (rv[i] - rv[i - 1]) / hm) / (hm + hp);
            let lhs = d2 / r[i];
            let rhs = 4.0 * PI * self.rho_tf[i];
            let w = r[i] * r[i] * 0.5 * (hm + hp);
            num += (lhs - rhs).abs() * w;
            den += rhs.abs() * w;
        }
        num / den
    }

    /// `W = V^TF - z/r`, extended continuously to `r = 0`.
    pub fn screened_potential(&self, r: f64) -> f64 {
        let u = self.universal();
        let b = self.length_scale;
        let x = r / b;
        if x < u.x_min() {
            return self.z / b * (u.initial_slope + 4.0 / 3.0 * x.sqrt());
        }
        self.z / r * (u.phi(x) - 1.0)
    }

    /// Sup of `|∂_r^k V^TF| d^k / f(d)²`, `k = 0, 1, 2`, over `d ∈ [lo, 2lo]`.
    pub fn derivative_bound_ratios(&self, lo: f64) -> [f64; 3] {
        let mut out = [0.0f64; 3];
        for i in 0..=64 {
            let d = lo * (1.0 + i as f64 / 64.0);
            let f2 = (1.0 / d).min(d.powi(-4));
            let v = self.potential(d);
            let (d1, d2) = self.potential_derivatives(d);
            out[0] = out[0].max(v.abs() / f2);
            out[1] = out[1].max(d1.abs() * d / f2);
            out[2] = out[2].max(d2.abs() * d * d / f2);
        }
        out
    }

    /// CSV with columns `r,V_TF,rho_TF`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "r,V_TF,rho_TF")?;
        for ((r, v), p) in self.grid.points().iter().zip(&self.v_tf).zip(&self.rho_tf) {
            writeln!(w, "{r:.16e},{v:.16e},{p:.16e}")?;
        }
        Ok(())
    }
}
