use std::f64::consts::PI;

use crate::numerics::quadrature::cumulative_trapezoid;

/// `D(f) = ½∬ f(x)f(y)/|x-y|` for a radial density tabulated at increasing radii.
///
/// Newton's theorem reduces the potential of `f` at radius `r` to
/// `Q(r)/r + ∫_r^∞ 4πs f(s) ds` with `Q(r)` the charge inside `r`.
pub fn coulomb_energy_d(r: &[f64], f: &[f64]) -> f64 {
    assert_eq!(r.len(), f.len());
    let n = r.len();
    if n < 2 {
        return 0.0;
    }
    let shell: Vec<f64> = r.iter().zip(f).map(|(r, f)| 4.0 * PI * r * r * f).collect();
    let outer_integrand: Vec<f64> = r.iter().zip(f).map(|(r, f)| 4.0 * PI * r * f).collect();
    let mut q = cumulative_trapezoid(r, &shell);
    // charge of the ball below the first node, density taken constant there
    let head = 4.0 * PI * r[0].powi(3) * f[0] / 3.0;
    q.iter_mut().for_each(|v| *v += head);
    let cum_outer = cumulative_trapezoid(r, &outer_integrand);
    let total_outer = cum_outer[n - 1];
    let u: Vec<f64> = (0..n)
        .map(|i| {
            let inner = if r[i] > 0.0 { q[i] / r[i] } else { 0.0 };
            inner + total_outer - cum_outer[i]
        })
        .collect();
    let integrand: Vec<f64> = shell.iter().zip(&u).map(|(s, u)| s * u).collect();
    0.5 * cumulative_trapezoid(r, &integrand)[n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_ball() {
        let n = 20001;
        let r: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let f = vec![3.0 / (4.0 * PI); n];
        assert!((coulomb_energy_d(&r, &f) - 0.6).abs() < 1e-6);
    }

    #[test]
    fn zero_density() {
        let r: Vec<f64> = (0..100).map(|i| i as f64 * 0.1).collect();
        assert_eq!(coulomb_energy_d(&r, &vec![0.0; 100]), 0.0);
    }

    #[test]
    fn dilation_homogeneity() {
        let r: Vec<f64> = (0..4001).map(|i| i as f64 * 0.005).collect();
        let f: Vec<f64> = r.iter().map(|r| (-r * r).exp()).collect();
        let d = coulomb_energy_d(&r, &f);
        let lam = 2.5;
        let rl: Vec<f64> = r.iter().map(|r| r / lam).collect();
        let fl: Vec<f64> = f.iter().map(|f| lam.powi(3) * f).collect();
        assert!((coulomb_energy_d(&rl, &fl) - lam * d).abs() < 1e-8 * d.max(1.0));
    }
}
