use serde::{Deserialize, Serialize};

use super::step::{smooth_step, smooth_step_taylor};
use super::taylor::Taylor;
use crate::error::{Error, Result};

/// Smooth bump `φ(x) = g(|x - c| / ℓ)`.
///
/// The profile is `g(t) = S(2(1 - |t|))` with `S` the C^∞ step of the
/// partition module, so `g ≡ 1` on `|t| ≤ 1/2` and `g = 0` for `|t| ≥ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bump {
    pub center: Vec<f64>,
    pub radius: f64,
    pub smoothness_order: usize,
    /// `sup_t |g^(k)(t)|` for k = 0..=order, i.e. sup of `ℓ^k ∂_r^k φ`.
    pub derivative_sup_norms: Vec<f64>,
}

const SUP_SAMPLES: usize = 4096;

pub fn make_bump(center: &[f64], radius: f64, order: usize) -> Result<Bump> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::invalid(format!("bump radius must be positive, got {radius}")));
    }
    if order < 3 {
        return Err(Error::invalid(format!("bump smoothness order must be at least 3, got {order}")));
    }
    if center.is_empty() || center.iter().any(|c| !c.is_finite()) {
        return Err(Error::invalid("bump center must be a finite nonempty vector"));
    }
    let mut sup = vec![0.0f64; order + 1];
    for i in 0..SUP_SAMPLES {
        let t = i as f64 / SUP_SAMPLES as f64;
        for (k, s) in sup.iter_mut().enumerate() {
            *s = s.max(profile_derivative(t, k).abs());
        }
    }
    Ok(Bump { center: center.to_vec(), radius, smoothness_order: order, derivative_sup_norms: sup })
}

/// `g(t)` for the reference profile.
pub(crate) fn profile(t: f64) -> f64 {
    smooth_step(2.0 * (1.0 - t.abs()))
}

/// `g^(k)(t)` via Taylor-mode differentiation.
pub(crate) fn profile_derivative(t: f64, k: usize) -> f64 {
    if k == 0 {
        return profile(t);
    }
    let x = Taylor::variable(t.abs(), k);
    let g = smooth_step_taylor(&x.scale(-2.0).add_scalar(2.0));
    let sign = if t < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
    sign * g.derivative(k)
}

impl Bump {
    pub fn dim(&self) -> usize {
        self.center.len()
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.center.len(), "point dimension mismatch");
        let r2: f64 = x.iter().zip(&self.center).map(|(a, c)| (a - c) * (a - c)).sum();
        self.radial(r2.sqrt())
    }

    /// Value at distance `r` from the center.
    pub fn radial(&self, r: f64) -> f64 {
        profile(r / self.radius)
    }

    /// `k`-th derivative along a ray at distance `r` from the center.
    pub fn radial_derivative(&self, r: f64, k: usize) -> f64 {
        profile_derivative(r / self.radius, k) / self.radius.powi(k as i32)
    }

    /// Support radius.
    pub fn support(&self) -> f64 {
        self.radius
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact_support_and_normalization() {
        let b = make_bump(&[0.0], 1.0, 7).unwrap();
        assert_eq!(b.value(&[0.0]), 1.0);
        assert_eq!(b.value(&[1.0]), 0.0);
        assert_eq!(b.value(&[-1.5]), 0.0);
        assert_eq!(b.value(&[0.45]), 1.0);
        for i in 0..200 {
            let v = b.value(&[-1.0 + i as f64 * 0.01]);
            assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn invalid_arguments() {
        assert!(make_bump(&[0.0], 0.0, 7).is_err());
        assert!(make_bump(&[0.0], -1.0, 7).is_err());
        assert!(make_bump(&[0.0], 1.0, 2).is_err());
    }

    #[test]
    fn taylor_derivatives_match_finite_differences() {
        let d = 1e-4;
        for &t in &[0.0, 0.2, 0.55, 0.8, -0.7] {
            let fd1 = (profile(t + d) - profile(t - d)) / (2.0 * d);
            let fd2 = (profile(t + d) - 2.0 * profile(t) + profile(t - d)) / (d * d);
            let (g1, g2) = (profile_derivative(t, 1), profile_derivative(t, 2));
            assert!((g1 - fd1).abs() < 1e-6 * (1.0 + g1.abs()), "t={t}");
            assert!((g2 - fd2).abs() < 1e-4 * (1.0 + g2.abs()), "t={t}: {g2} vs {fd2}");
        }
    }

    #[test]
    fn dilated_bump_has_same_scaled_sup_norms() {
        let a = make_bump(&[0.0], 1.0, 7).unwrap();
        let b = make_bump(&[0.0], 2.0, 7).unwrap();
        for (x, y) in a.derivative_sup_norms.iter().zip(&b.derivative_sup_norms) {
            assert!(x.is_finite() && (x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }
        assert_eq!(a.derivative_sup_norms[0], 1.0);
    }

    #[test]
    fn multi_dimensional_value() {
        let b = make_bump(&[1.0, 0.0, 0.0], 0.5, 3).unwrap();
        assert_eq!(b.value(&[1.0, 0.0, 0.0]), 1.0);
        assert!((b.value(&[1.0, 0.3, 0.0]) - b.radial(0.3)).abs() < 1e-15);
        assert_eq!(b.value(&[0.0, 0.0, 0.0]), 0.0);
    }
}
