use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::quadrature::gauss_panels;
use crate::numerics::Bump;
use crate::spectra::RadialFn;

/// Volume of the unit ball in `ℝⁿ`, by `ω_n = (2π/n) ω_{n-2}`.
pub fn omega(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * PI / n as f64 * omega(n - 2),
    }
}

/// Radial Weyl problem: symbol `q² + V(|u|)` in `ℝⁿ`, optional radial bump `φ`.
#[derive(Clone)]
pub struct WeylSpec {
    pub n: usize,
    pub potential: RadialFn,
    pub bump: Option<Bump>,
    pub h: f64,
    /// Radius beyond which `V_-` (times `φ`) vanishes.
    pub extent: f64,
    pub panels: usize,
}

impl std::fmt::Debug for WeylSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeylSpec")
            .field("n", &self.n)
            .field("h", &self.h)
            .field("extent", &self.extent)
            .field("bump", &self.bump)
            .finish_non_exhaustive()
    }
}

impl WeylSpec {
    pub fn new(n: usize, potential: RadialFn, h: f64, extent: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::invalid(format!("h must be positive, got {h}")));
        }
        if !(extent > 0.0 && extent.is_finite()) {
            return Err(Error::invalid(format!("extent must be positive and finite, got {extent}")));
        }
        Ok(WeylSpec { n, potential, bump: None, h, extent, panels: 400 })
    }

    /// Localizes with a bump centred at the origin; the extent shrinks to its support.
    pub fn with_bump(mut self, bump: Bump) -> Result<Self> {
        if bump.center.iter().any(|&c| c != 0.0) {
            return Err(Error::invalid("radial Weyl integrals need a bump centred at the origin"));
        }
        self.extent = self.extent.min(bump.support());
        self.bump = Some(bump);
        Ok(self)
    }

    pub fn with_h(mut self, h: f64) -> Self {
        self.h = h;
        self
    }

    fn phi2(&self, r: f64) -> f64 {
        self.bump.as_ref().map_or(1.0, |b| b.radial(r).powi(2))
    }

    /// `∫ φ² |V_-|^{n/2+1} dⁿu`, independent of `h`.
    pub fn moment(&self) -> Result<f64> {
        let n = self.n as f64;
        let area = n * omega(self.n);
        let p = 0.5 * n + 1.0;
        // r = t² tames Coulomb-type singularities at the origin
        let g = |t: f64| {
            let r = t * t;
            let vm = (-(self.potential)(r)).max(0.0);
            if vm == 0.0 {
                return 0.0;
            }
            area * r.powf(n - 1.0) * self.phi2(r) * vm.powf(p) * 2.0 * t
        };
        let m = gauss_panels(g, 0.0, self.extent.sqrt(), self.panels);
        if !m.is_finite() {
            return Err(Error::invalid("Weyl moment is not finite"));
        }
        Ok(m)
    }
}

/// `(2πh)^{-n} ∫ φ² (q² + V)_- du dq = -(2ω_n/(n+2)) (2πh)^{-n} ∫ φ² |V_-|^{n/2+1} du`.
pub fn weyl_energy(spec: &WeylSpec) -> Result<f64> {
    let n = spec.n;
    Ok(-2.0 * omega(n) / (n as f64 + 2.0) * (2.0 * PI * spec.h).powi(-(n as i32)) * spec.moment()?)
}

/// `(2πh)^{-n} ω_n |V_-(r)|^{n/2}`.
pub fn weyl_density(spec: &WeylSpec, r: f64) -> f64 {
    let vm = (-(spec.potential)(r)).max(0.0);
    let n = spec.n;
    (2.0 * PI * spec.h).powi(-(n as i32)) * omega(n) * vm.powf(0.5 * n as f64)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::numerics::quadrature::gauss_panels;
    use crate::thomas_fermi::{atomic_tf, default_tf_grid};

    /// `π^{n/2} = n ω_n ∫_0^∞ r^{n-1} e^{-r²} dr`.
    fn omega_from_gaussian(n: usize) -> f64 {
        let radial = gauss_panels(|r| r.powi(n as i32 - 1) * (-r * r).exp(), 0.0, 12.0, 400);
        PI.powf(0.5 * n as f64) / (n as f64 * radial)
    }

    #[test]
    fn omega_matches_gaussian_route() {
        assert_eq!(omega(1), 2.0);
        assert!((omega(2) - PI).abs() < 1e-15);
        assert!((omega(3) - 4.0 * PI / 3.0).abs() < 1e-15);
        for n in 1..=8 {
            assert!((omega(n) / omega_from_gaussian(n) - 1.0).abs() < 1e-12, "n={n}");
        }
    }

    #[test]
    fn sharp_ball() {
        let c: f64 = 0.7;
        let h = 0.3;
        let s = WeylSpec::new(3, Arc::new(move |r| if r < 1.0 { -c } else { 0.0 }), h, 1.0).unwrap();
        let exact = -c.powf(2.5) * (4.0 * PI / 3.0) / (15.0 * PI * PI * h.powi(3));
        assert!((weyl_energy(&s).unwrap() - exact).abs() < 1e-8 * exact.abs());
    }

    #[test]
    fn positive_potential() {
        let s = WeylSpec::new(3, Arc::new(|r| r * r), 0.1, 2.0).unwrap();
        assert_eq!(weyl_energy(&s).unwrap(), 0.0);
        assert_eq!(weyl_density(&s, 0.5), 0.0);
    }

    #[test]
    fn coulomb_with_shift() {
        for (z, h) in [(1.0f64, 1.0f64), (1.0, 0.1), (2.0, 0.3)] {
            let s = WeylSpec::new(3, Arc::new(move |r| -z / r + 1.0), h, z).unwrap();
            let exact = -z.powi(3) / (12.0 * h.powi(3));
            assert!((weyl_energy(&s).unwrap() / exact - 1.0).abs() < 1e-6);
        }
    }

    #[test]
    fn exact_h_scaling() {
        let s = WeylSpec::new(3, Arc::new(|r| r * r - 1.0), 1.0, 1.0).unwrap();
        let base = weyl_energy(&s).unwrap();
        for h in [0.5, 0.1, 0.037] {
            let w = weyl_energy(&s.clone().with_h(h)).unwrap() * h.powi(3);
            assert!((w - base).abs() < 1e-12 * base.abs());
        }
    }

    /// `(2πh)^{-3} ∫∫ φ²(q² + V)_- du dq` by uniform sampling of the product of two balls.
    fn monte_carlo(spec: &WeylSpec, q_max: f64, samples: usize, seed: u64) -> (f64, f64) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut ball = |radius: f64| loop {
            let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let r2: f64 = p.iter().map(|x| x * x).sum();
            if r2 <= 1.0 {
                break radius * r2.sqrt();
            }
        };
        let volume = omega(3).powi(2) * spec.extent.powi(3) * q_max.powi(3);
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..samples {
            let r = ball(spec.extent);
            let q = ball(q_max);
            let sigma = (q * q + (spec.potential)(r)).min(0.0);
            let f = spec.phi2(r) * sigma * volume;
            s += f;
            s2 += f * f;
        }
        let n = samples as f64;
        let mean = s / n;
        let se = ((s2 / n - mean * mean) / n).sqrt();
        let scale = (2.0 * PI * spec.h).powi(-3);
        (mean * scale, se * scale)
    }

    #[test]
    fn monte_carlo_oracle() {
        let h = 0.2;
        let harmonic = WeylSpec::new(3, Arc::new(|r| r * r - 1.0), h, 1.0).unwrap();
        let bump = crate::numerics::make_bump(&[0.0], 1.5, 7).unwrap();
        let well = WeylSpec::new(3, super::super::smooth_well().unwrap(), h, 2.0).unwrap().with_bump(bump).unwrap();
        for (i, s) in [harmonic, well].iter().enumerate() {
            let (mc, se) = monte_carlo(s, 1.0, 400_000, 7 + i as u64);
            let w = weyl_energy(s).unwrap();
            assert!((mc - w).abs() < 3.0 * se, "{mc} ± {se} vs {w}");
            assert!(se < 0.02 * w.abs());
        }
    }

    #[test]
    fn density_values() {
        let s = WeylSpec::new(3, Arc::new(|_| -1.0), 1.0, 1.0).unwrap();
        assert!((weyl_density(&s, 0.3) - 0.016_887).abs() < 1e-6);
        let tf = atomic_tf(1.0, &default_tf_grid(1.0, 4000).unwrap()).unwrap();
        let t2 = tf.clone();
        let s = WeylSpec::new(3, Arc::new(move |r| -t2.potential(r)), 0.5f64.sqrt(), 10.0).unwrap();
        for (i, &r) in tf.grid.points().iter().enumerate().step_by(173) {
            assert!((weyl_density(&s, r) / (0.5 * tf.rho_tf[i]) - 1.0).abs() < 1e-6);
        }
    }
}
