use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Point nuclei with charges `z_k > 0` at distinct positions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NucleiConfig {
    pub charges: Vec<f64>,
    pub positions: Vec<[f64; 3]>,
}

fn dist(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

impl NucleiConfig {
    pub fn new(charges: Vec<f64>, positions: Vec<[f64; 3]>) -> Result<Self> {
        if charges.len() != positions.len() || charges.is_empty() {
            return Err(Error::invalid("need one position per charge and at least one nucleus"));
        }
        if charges.iter().any(|z| !(*z > 0.0 && z.is_finite())) {
            return Err(Error::invalid("nuclear charges must be positive"));
        }
        let cfg = NucleiConfig { charges, positions };
        if cfg.len() >= 2 && cfg.r_min() <= 0.0 {
            return Err(Error::invalid("nuclear positions must be distinct"));
        }
        Ok(cfg)
    }

    pub fn atom(z: f64) -> Result<Self> {
        NucleiConfig::new(vec![z], vec![[0.0; 3]])
    }

    pub fn len(&self) -> usize {
        self.charges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.charges.is_empty()
    }

    /// Minimal pairwise distance; infinite for a single nucleus.
    pub fn r_min(&self) -> f64 {
        let mut m = f64::INFINITY;
        for i in 0..self.len() {
            for j in 0..i {
                m = m.min(dist(&self.positions[i], &self.positions[j]));
            }
        }
        m
    }

    pub fn total_charge(&self) -> f64 {
        self.charges.iter().sum()
    }

    /// Charges `γ³z`, positions `r/γ`: the configuration paired with `γ` in the TF scaling law.
    pub fn scaled(&self, gamma: f64) -> Self {
        NucleiConfig {
            charges: self.charges.iter().map(|z| gamma.powi(3) * z).collect(),
            positions: self.positions.iter().map(|p| [p[0] / gamma, p[1] / gamma, p[2] / gamma]).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Geometry {
    /// Distance to the nearest nucleus.
    pub d: f64,
    /// `min(d^{-1/2}, d^{-2})`; infinite on a nucleus.
    pub f: f64,
    /// `½(1 + Σ_k (|x - r_k|² + h²)^{-1/2})^{-1}`.
    pub ell: f64,
}

pub fn geometry_functions(cfg: &NucleiConfig, x: [f64; 3], h: f64) -> Geometry {
    let d = cfg.positions.iter().map(|p| dist(p, &x)).fold(f64::INFINITY, f64::min);
    let f = if d == 0.0 { f64::INFINITY } else { d.powf(-0.5).min(d.powi(-2)) };
    let s: f64 = cfg.positions.iter().map(|p| (dist(p, &x).powi(2) + h * h).powf(-0.5)).sum();
    Geometry { d, f, ell: 0.5 / (1.0 + s) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_nuclei_example() {
        let cfg = NucleiConfig::new(vec![1.0, 1.0], vec![[0.0; 3], [1.0, 0.0, 0.0]]).unwrap();
        let g = geometry_functions(&cfg, [0.3, 0.0, 0.0], 0.1);
        assert!((g.d - 0.3).abs() < 1e-15);
        assert!((g.f - 0.3f64.powf(-0.5)).abs() < 1e-12);
        assert!((g.f - 1.8257).abs() < 1e-4);
        assert_eq!(cfg.r_min(), 1.0);
    }

    #[test]
    fn ell_at_nucleus() {
        let cfg = NucleiConfig::atom(1.0).unwrap();
        let g = geometry_functions(&cfg, [0.0; 3], 0.1);
        assert!((g.ell - 1.0 / 22.0).abs() < 1e-15);
        assert_eq!(g.d, 0.0);
        assert!(g.f.is_infinite());
    }

    #[test]
    fn far_field_uses_inverse_square() {
        let cfg = NucleiConfig::atom(1.0).unwrap();
        let g = geometry_functions(&cfg, [0.0, 0.0, 3.0], 0.1);
        assert!((g.f - 1.0 / 9.0).abs() < 1e-15);
    }

    #[test]
    fn invalid_configurations() {
        assert!(NucleiConfig::new(vec![1.0, 1.0], vec![[0.0; 3], [0.0; 3]]).is_err());
        assert!(NucleiConfig::new(vec![-1.0], vec![[0.0; 3]]).is_err());
        assert!(NucleiConfig::new(vec![1.0], vec![]).is_err());
    }
}
