//! Truncated Taylor series arithmetic for exact higher derivatives.

/// Taylor coefficients `c[k] = f^(k)(t0) / k!` truncated at a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct Taylor {
    pub c: Vec<f64>,
}

impl Taylor {
    /// The independent variable `t0 + τ`.
    pub fn variable(t0: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = t0;
        if order >= 1 {
            c[1] = 1.0;
        }
        Taylor { c }
    }

    pub fn constant(v: f64, order: usize) -> Self {
        let mut c = vec![0.0; order + 1];
        c[0] = v;
        Taylor { c }
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn add(&self, o: &Taylor) -> Taylor {
        Taylor { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Taylor) -> Taylor {
        Taylor { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, s: f64) -> Taylor {
        Taylor { c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn add_scalar(&self, s: f64) -> Taylor {
        let mut c = self.c.clone();
        c[0] += s;
        Taylor { c }
    }

    pub fn mul(&self, o: &Taylor) -> Taylor {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|j| self.c[j] * o.c[k - j]).sum();
        }
        Taylor { c }
    }

    pub fn recip(&self) -> Taylor {
        let n = self.c.len();
        let a0 = self.c[0];
        let mut c = vec![0.0; n];
        c[0] = 1.0 / a0;
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| self.c[j] * c[k - j]).sum();
            c[k] = -s / a0;
        }
        Taylor { c }
    }

    pub fn div(&self, o: &Taylor) -> Taylor {
        self.mul(&o.recip())
    }

    pub fn exp(&self) -> Taylor {
        let n = self.c.len();
        let mut c = vec![0.0; n];
        c[0] = self.c[0].exp();
        for k in 1..n {
            let s: f64 = (1..=k).map(|j| j as f64 * self.c[j] * c[k - j]).sum();
            c[k] = s / k as f64;
        }
        Taylor { c }
    }

    /// `k`-th derivative at the expansion point.
    pub fn derivative(&self, k: usize) -> f64 {
        let fact: f64 = (1..=k).map(|i| i as f64).product();
        self.c[k] * fact
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exp_of_variable_has_factorial_coefficients() {
        let e = Taylor::variable(0.3, 6).exp();
        for k in 0..=6 {
            assert!((e.derivative(k) - 0.3f64.exp()).abs() < 1e-14);
        }
    }

    #[test]
    fn recip_matches_closed_form() {
        let t = Taylor::variable(2.0, 5).recip();
        // d^k/dt^k 1/t = (-1)^k k! / t^(k+1)
        for k in 0..=5 {
            let fact: f64 = (1..=k).map(|i| i as f64).product();
            let exact = (-1f64).powi(k as i32) * fact / 2f64.powi(k as i32 + 1);
            assert!((t.derivative(k) - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn product_rule() {
        let x = Taylor::variable(0.7, 4);
        let f = x.mul(&x).mul(&x);
        assert!((f.derivative(1) - 3.0 * 0.49).abs() < 1e-14);
        assert!((f.derivative(2) - 6.0 * 0.7).abs() < 1e-14);
        assert!((f.derivative(3) - 6.0).abs() < 1e-14);
        assert_eq!(f.derivative(4), 0.0);
    }
}
