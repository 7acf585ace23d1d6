use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use super::step::{smooth_step, smooth_step_prime};
use crate::error::{Error, Result};

/// Quadratic partition of unity `Φ₋² + Φ₊² = 1` in the distance variable `d`.
///
/// `Φ₋ = cos θ`, `Φ₊ = sin θ` with `θ` rising smoothly from 0 at `d = R` to
/// `π/2` at `d = 2R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PartitionPair {
    pub r: f64,
}

pub fn make_partition(r: f64) -> Result<PartitionPair> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid(format!("partition radius must be positive, got {r}")));
    }
    Ok(PartitionPair { r })
}

impl PartitionPair {
    pub fn theta(&self, d: f64) -> f64 {
        FRAC_PI_2 * smooth_step((d - self.r) / self.r)
    }

    /// `dθ/dd`.
    pub fn theta_prime(&self, d: f64) -> f64 {
        FRAC_PI_2 * smooth_step_prime((d - self.r) / self.r) / self.r
    }

    pub fn phi_minus(&self, d: f64) -> f64 {
        // sin of the complementary angle is exactly 0 on the outer plateau
        (FRAC_PI_2 * (1.0 - smooth_step((d - self.r) / self.r))).sin()
    }

    pub fn phi_plus(&self, d: f64) -> f64 {
        self.theta(d).sin()
    }

    /// `(Φ₋')² + (Φ₊')²`, which equals `θ'²`.
    pub fn localization_error(&self, d: f64) -> f64 {
        let t = self.theta_prime(d);
        t * t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plateaus() {
        let p = make_partition(1.0).unwrap();
        assert_eq!(p.phi_minus(0.5), 1.0);
        assert_eq!(p.phi_plus(0.5), 0.0);
        assert_eq!(p.phi_minus(3.0), 0.0);
        assert_eq!(p.phi_plus(3.0), 1.0);
    }

    #[test]
    fn quadratic_identity() {
        let p = make_partition(1.0).unwrap();
        let v = p.phi_minus(1.5).powi(2) + p.phi_plus(1.5).powi(2);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn theta_prime_matches_finite_difference() {
        let p = make_partition(0.7).unwrap();
        let e = 1e-6;
        for i in 1..40 {
            let d = 0.7 + 0.7 * i as f64 / 40.0;
            let fd = (p.theta(d + e) - p.theta(d - e)) / (2.0 * e);
            assert!((fd - p.theta_prime(d)).abs() < 1e-7, "d={d}");
            let ims = ((p.phi_minus(d + e) - p.phi_minus(d - e)) / (2.0 * e)).powi(2)
                + ((p.phi_plus(d + e) - p.phi_plus(d - e)) / (2.0 * e)).powi(2);
            assert!((ims - p.localization_error(d)).abs() < 1e-6);
        }
    }

    #[test]
    fn rejects_bad_radius() {
        assert!(make_partition(0.0).is_err());
        assert!(make_partition(f64::NAN).is_err());
    }
}
