use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::params::{CoherentParams, PhasePoint};
use crate::error::{Error, Result};

/// Value and first three derivatives of a function of one variable.
pub type Jet = [f64; 4];

pub type JetFn = Arc<dyn Fn(f64) -> Jet + Send + Sync>;

/// Separable symbol `σ(u,q) = F(q) + V(u)` on the line.
#[derive(Clone)]
pub struct ClassicalSymbol {
    f: JetFn,
    v: JetFn,
}

impl fmt::Debug for ClassicalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ClassicalSymbol { .. }")
    }
}

fn poly_jet(c: &[f64], x: f64) -> Jet {
    let mut out = [0.0; 4];
    for (k, o) in out.iter_mut().enumerate() {
        *o = c
            .iter()
            .enumerate()
            .skip(k)
            .map(|(i, &ci)| ci * (0..k).map(|j| (i - j) as f64).product::<f64>() * x.powi((i - k) as i32))
            .sum();
    }
    out
}

impl ClassicalSymbol {
    pub fn new(f: JetFn, v: JetFn) -> Self {
        ClassicalSymbol { f, v }
    }

    /// Polynomials `F(q) = Σ f_i q^i`, `V(u) = Σ v_i u^i`.
    pub fn polynomial(f: &[f64], v: &[f64]) -> Self {
        let (f, v) = (f.to_vec(), v.to_vec());
        ClassicalSymbol { f: Arc::new(move |q| poly_jet(&f, q)), v: Arc::new(move |u| poly_jet(&v, u)) }
    }

    /// `q² + u² + shift`.
    pub fn harmonic(shift: f64) -> Self {
        ClassicalSymbol::polynomial(&[0.0, 0.0, 1.0], &[shift, 0.0, 1.0])
    }

    pub fn f_jet(&self, q: f64) -> Jet {
        (self.f)(q)
    }

    pub fn v_jet(&self, u: f64) -> Jet {
        (self.v)(u)
    }

    pub fn value(&self, u: f64, q: f64) -> f64 {
        self.f_jet(q)[0] + self.v_jet(u)[0]
    }

    pub fn laplacian(&self, u: f64, q: f64) -> f64 {
        self.f_jet(q)[2] + self.v_jet(u)[2]
    }

    /// Sampled `(sup|F'''|, sup|V'''|)` over `|q| ≤ q_max`, `|u| ≤ u_max`.
    pub fn third_derivative_sup_norms(&self, u_max: f64, q_max: f64) -> (f64, f64) {
        let n = 2048;
        let sup = |g: &dyn Fn(f64) -> Jet, r: f64| {
            (0..=n).map(|i| g(-r + 2.0 * r * i as f64 / n as f64)[3].abs()).fold(0.0, f64::max)
        };
        (sup(&|q| self.f_jet(q), q_max), sup(&|u| self.v_jet(u), u_max))
    }
}

/// `Ĥ_{u,q} = c0 + grad_u (x̂ - u) + grad_q (-ih∂ - q)` on the line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OperatorSymbol {
    /// `σ(u,q) + Δσ(u,q)/(4b)`.
    pub c0: f64,
    pub grad_u: f64,
    pub grad_q: f64,
    pub u: f64,
    pub q: f64,
}

pub fn operator_symbol(sym: &ClassicalSymbol, p: &CoherentParams, pt: &PhasePoint) -> Result<OperatorSymbol> {
    if pt.dim() != 1 {
        return Err(Error::invalid("operator symbols are realized on the line only"));
    }
    let (u, q) = (pt.u[0], pt.q[0]);
    let (fj, vj) = (sym.f_jet(q), sym.v_jet(u));
    Ok(OperatorSymbol { c0: fj[0] + vj[0] + (fj[2] + vj[2]) / (4.0 * p.b()), grad_u: vj[1], grad_q: fj[1], u, q })
}

/// `∫ ξ̃(v) G_b(v_u) G_b(v_q) dv` with `ξ̃(v) = tr(Hess)/(4b) - ½ vᵀ Hess v`.
///
/// Evaluated by tensor trapezoid over `|v_i| ≤ 9/√b`; vanishes because `G_b` has variance `1/(2b)`.
pub fn gaussian_cancellation(hessian: [[f64; 2]; 2], b: f64) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::invalid(format!("b must be positive, got {b}")));
    }
    let ext = 9.0 / b.sqrt();
    let n = 721;
    let d = 2.0 * ext / (n - 1) as f64;
    let g: Vec<f64> = (0..n)
        .map(|i| crate::numerics::gaussian_weight_g_b(b, &[-ext + d * i as f64]).expect("b validated"))
        .collect();
    let tr = hessian[0][0] + hessian[1][1];
    let mut total = 0.0;
    for i in 0..n {
        let vu = -ext + d * i as f64;
        let wi = if i == 0 || i == n - 1 { 0.5 } else { 1.0 };
        for j in 0..n {
            let vq = -ext + d * j as f64;
            let wj = if j == 0 || j == n - 1 { 0.5 } else { 1.0 };
            let quad = hessian[0][0] * vu * vu + (hessian[0][1] + hessian[1][0]) * vu * vq + hessian[1][1] * vq * vq;
            total += wi * wj * (tr / (4.0 * b) - 0.5 * quad) * g[i] * g[j];
        }
    }
    Ok(total * d * d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_jets() {
        let s = ClassicalSymbol::polynomial(&[1.0, 2.0, 3.0], &[0.0, 0.0, 0.0, 1.0]);
        assert_eq!(s.f_jet(2.0), [17.0, 14.0, 6.0, 0.0]);
        assert_eq!(s.v_jet(-2.0), [-8.0, 12.0, -12.0, 6.0]);
        assert_eq!(s.third_derivative_sup_norms(1.0, 1.0), (0.0, 6.0));
    }

    #[test]
    fn harmonic_symbol_at_origin() {
        // a solving 2a/(1+h²a²) = 8
        let h = 0.1f64;
        let a = (1.0 - (1.0 - 64.0 * h * h).sqrt()) / (8.0 * h * h);
        let p8 = CoherentParams::new(h, a, 1).unwrap();
        assert!((p8.b() - 8.0).abs() < 1e-12);
        let s = operator_symbol(&ClassicalSymbol::harmonic(0.0), &p8, &PhasePoint::line(0.0, 0.0)).unwrap();
        assert!((s.c0 - 0.125).abs() < 1e-14 && s.grad_u == 0.0 && s.grad_q == 0.0);
        let c = operator_symbol(&ClassicalSymbol::polynomial(&[5.0], &[0.0]), &p8, &PhasePoint::line(0.3, -1.0)).unwrap();
        assert_eq!((c.c0, c.grad_u, c.grad_q), (5.0, 0.0, 0.0));
    }

    #[test]
    fn projection_limit_is_classical_approximation() {
        let h = 0.2;
        let p = CoherentParams::new(h, 1.0 / h, 1).unwrap();
        let s = ClassicalSymbol::polynomial(&[0.0, 0.0, 1.0], &[0.0, 1.0, 0.0, 2.0]);
        let (u, q) = (0.7, -0.4);
        let o = operator_symbol(&s, &p, &PhasePoint::line(u, q)).unwrap();
        assert!((o.c0 - (s.value(u, q) + h / 4.0 * s.laplacian(u, q))).abs() < 1e-13);
        assert!((o.grad_u - (1.0 + 6.0 * u * u)).abs() < 1e-14 && (o.grad_q - 2.0 * q).abs() < 1e-14);
    }

    #[test]
    fn cancellation_vanishes() {
        for &b in &[0.5, 1.0, 8.0, 40.0] {
            for hess in [[[2.0, 0.0], [0.0, 2.0]], [[6.0, 0.0], [0.0, 2.0]], [[1.0, 0.7], [0.7, -3.0]]] {
                assert!(gaussian_cancellation(hess, b).unwrap().abs() < 1e-8);
            }
        }
        assert!(gaussian_cancellation([[1.0, 0.0], [0.0, 1.0]], 0.0).is_err());
    }
}
