use std::f64::consts::PI;

use nalgebra::Complex;

use super::params::{CoherentParams, PhasePoint};
use crate::error::{Error, Result};

fn dist2(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

fn check_dims(p: &CoherentParams, pt: &PhasePoint, xs: &[&[f64]]) -> Result<()> {
    let n = p.n();
    if pt.dim() != n || xs.iter().any(|x| x.len() != n) {
        return Err(Error::invalid(format!("all vectors must have dimension {n}")));
    }
    Ok(())
}

/// `⟨x|u,q⟩ = (πh)^{-n/4} e^{-(x-u)²/2h} e^{iqx/h}`.
pub fn old_state_wavefunction(p: &CoherentParams, pt: &PhasePoint, x: &[f64]) -> Result<Complex<f64>> {
    check_dims(p, pt, &[x])?;
    let h = p.h();
    let amp = (PI * h).powf(-(p.n() as f64) / 4.0) * (-dist2(x, &pt.u) / (2.0 * h)).exp();
    Ok(Complex::from_polar(amp, dot(&pt.q, x) / h))
}

/// `w(u,q) = (a/(π(1-ha)))^n e^{-a(u²+q²)/(1-ha)}`, defined for `a < 1/h`.
pub fn weight_w(p: &CoherentParams, u: &[f64], q: &[f64]) -> Result<f64> {
    if !p.is_strict() {
        return Err(Error::invalid(format!("weight needs a < 1/h, got a = {}, h = {}", p.a(), p.h())));
    }
    if u.len() != p.n() || q.len() != p.n() {
        return Err(Error::invalid(format!("u and q must have dimension {}", p.n())));
    }
    let c = p.a() / (1.0 - p.h() * p.a());
    let r2 = dot(u, u) + dot(q, q);
    Ok((c / PI).powi(p.n() as i32) * (-c * r2).exp())
}

/// Kernel `𝒢_{u,q}(x,y) = (πh)^{-n/2} exp(-a((x+y)/2-u)² + iq(x-y)/h - (x-y)²/(4h²a))`.
pub fn new_kernel_g(p: &CoherentParams, pt: &PhasePoint, x: &[f64], y: &[f64]) -> Result<Complex<f64>> {
    check_dims(p, pt, &[x, y])?;
    let (h, a) = (p.h(), p.a());
    let mut m2 = 0.0;
    let mut d2 = 0.0;
    let mut phase = 0.0;
    for i in 0..p.n() {
        let m = 0.5 * (x[i] + y[i]) - pt.u[i];
        let d = x[i] - y[i];
        m2 += m * m;
        d2 += d * d;
        phase += pt.q[i] * d / h;
    }
    let amp = (PI * h).powf(-(p.n() as f64) / 2.0) * (-a * m2 - d2 / (4.0 * h * h * a)).exp();
    Ok(Complex::from_polar(amp, phase))
}
