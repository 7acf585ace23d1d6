//! Symmetric tridiagonal eigenvalue engine: Sturm-count bisection and
//! inverse iteration.

/// Symmetric tridiagonal matrix with diagonal `d` and off-diagonal `e`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(d: Vec<f64>, e: Vec<f64>) -> Self {
        assert!(!d.is_empty(), "empty tridiagonal matrix");
        assert_eq!(e.len() + 1, d.len(), "off-diagonal length must be n-1");
        SymTridiagonal { d, e }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.d.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.e[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.e[i].abs() } else { 0.0 };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    fn norm_bound(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Eigenvalues below `-rounding_floor()` are negative beyond bisection noise.
    pub fn rounding_floor(&self) -> f64 {
        16.0 * f64::EPSILON * self.norm_bound()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE.sqrt() * self.norm_bound();
        self.count_below_with(x, pivmin)
    }

    fn count_below_with(&self, x: f64, pivmin: f64) -> usize {
        let mut count = 0;
        let mut q = self.d[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.d.len() {
            let e = self.e[i - 1];
            q = self.d[i] - x - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// All eigenvalues strictly below `x`, ascending, by bisection.
    pub fn eigenvalues_below(&self, x: f64) -> Vec<f64> {
        let norm = self.norm_bound();
        let pivmin = f64::MIN_POSITIVE.sqrt() * norm;
        let k = self.count_below_with(x, pivmin);
        if k == 0 {
            return Vec::new();
        }
        let (glo, ghi) = self.gershgorin();
        let abs_tol = 4.0 * f64::EPSILON * norm;
        let x = x.min(ghi + abs_tol + f64::EPSILON * ghi.abs());
        // upper brackets: ub[j] is a point known to have > j eigenvalues below it
        let mut ub = vec![x; k];
        let mut out = Vec::with_capacity(k);
        let mut lower = glo - abs_tol;
        for j in 0..k {
            let mut lo = lower;
            let mut hi = ub[j];
            loop {
                let tol = abs_tol.max(2.0 * f64::EPSILON * lo.abs().max(hi.abs()));
                if hi - lo <= tol {
                    break;
                }
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                let c = self.count_below_with(mid, pivmin);
                if c > j {
                    hi = mid;
                    // the same point brackets every later index below c
                    for u in ub.iter_mut().take(c).skip(j + 1) {
                        if mid < *u {
                            *u = mid;
                        }
                    }
                } else {
                    lo = mid;
                }
            }
            let lam = 0.5 * (lo + hi);
            out.push(lam);
            lower = lo;
        }
        out
    }

    /// `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn kth_eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len());
        let norm = self.norm_bound();
        let pivmin = f64::MIN_POSITIVE.sqrt() * norm;
        let (glo, ghi) = self.gershgorin();
        let abs_tol = 4.0 * f64::EPSILON * norm;
        let (mut lo, mut hi) = (glo - abs_tol, ghi + abs_tol);
        loop {
            let tol = abs_tol.max(2.0 * f64::EPSILON * lo.abs().max(hi.abs()));
            let mid = 0.5 * (lo + hi);
            if hi - lo <= tol || mid <= lo || mid >= hi {
                return mid;
            }
            if self.count_below_with(mid, pivmin) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
    }

    /// Spectral norm `max |λ|`.
    pub fn spectral_norm(&self) -> f64 {
        self.kth_eigenvalue(0).abs().max(self.kth_eigenvalue(self.len() - 1).abs())
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        let mut out = vec![0.0; n];
        for i in 0..n {
            let mut s = self.d[i] * v[i];
            if i > 0 {
                s += self.e[i - 1] * v[i - 1];
            }
            if i + 1 < n {
                s += self.e[i] * v[i + 1];
            }
            out[i] = s;
        }
        out
    }

    /// Solve `(T - σ) y = b` by Gaussian elimination with partial pivoting.
    pub fn solve_shifted(&self, sigma: f64, b: &[f64]) -> Vec<f64> {
        let n = self.d.len();
        if n == 1 {
            let p = self.d[0] - sigma;
            return vec![b[0] / if p == 0.0 { f64::EPSILON } else { p }];
        }
        let tiny = f64::EPSILON * self.norm_bound();
        // rows stored as (main, upper, upper2) after pivoting
        let mut dl: Vec<f64> = self.e.clone();
        let mut dm: Vec<f64> = self.d.iter().map(|d| d - sigma).collect();
        let mut du: Vec<f64> = self.e.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut rhs = b.to_vec();
        for i in 0..n - 1 {
            if dm[i].abs() >= dl[i].abs() {
                let piv = if dm[i] == 0.0 { tiny } else { dm[i] };
                dm[i] = piv;
                let f = dl[i] / piv;
                dm[i + 1] -= f * du[i];
                rhs[i + 1] -= f * rhs[i];
                dl[i] = 0.0;
            } else {
                let f = dm[i] / dl[i];
                dm[i] = dl[i];
                let tmp = dm[i + 1];
                dm[i + 1] = du[i] - f * tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
                du[i] = tmp;
                rhs.swap(i, i + 1);
                rhs[i + 1] -= f * rhs[i];
            }
        }
        if dm[n - 1] == 0.0 {
            dm[n - 1] = tiny;
        }
        let mut y = vec![0.0; n];
        y[n - 1] = rhs[n - 1] / dm[n - 1];
        y[n - 2] = (rhs[n - 2] - du[n - 2] * y[n - 1]) / dm[n - 2];
        for i in (0..n.saturating_sub(2)).rev() {
            y[i] = (rhs[i] - du[i] * y[i + 1] - du2[i] * y[i + 2]) / dm[i];
        }
        y
    }

    /// Unit eigenvector for an accurately known eigenvalue, by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.d.len();
        let norm = self.norm_bound();
        let start: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * ((i * 7919 % 101) as f64 / 101.0)).collect();
        let mut eps = 8.0 * f64::EPSILON;
        loop {
            let shift = lambda + eps * norm;
            let mut v = start.clone();
            normalize(&mut v);
            let mut ok = true;
            for _ in 0..4 {
                let mut y = self.solve_shifted(shift, &v);
                if y.iter().any(|x| !x.is_finite()) {
                    ok = false;
                    break;
                }
                normalize(&mut y);
                v = y;
            }
            if ok || eps > 1e-6 {
                return v;
            }
            eps *= 64.0;
        }
    }
}

fn normalize(v: &mut [f64]) {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn dense(t: &SymTridiagonal) -> DMatrix<f64> {
        let n = t.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = t.d[i];
            if i + 1 < n {
                m[(i, i + 1)] = t.e[i];
                m[(i + 1, i)] = t.e[i];
            }
        }
        m
    }

    fn sample(n: usize) -> SymTridiagonal {
        let d = (0..n).map(|i| ((i * 37 % 17) as f64 - 8.0) * 0.3).collect();
        let e = (0..n - 1).map(|i| ((i * 11 % 7) as f64 - 3.5) * 0.5).collect();
        SymTridiagonal::new(d, e)
    }

    #[test]
    fn bisection_matches_dense_eigenvalues() {
        let t = sample(60);
        let mut ev: Vec<f64> = dense(&t).symmetric_eigenvalues().iter().cloned().collect();
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let below: Vec<f64> = ev.iter().cloned().filter(|&x| x < 0.5).collect();
        let got = t.eigenvalues_below(0.5);
        assert_eq!(got.len(), below.len());
        for (a, b) in got.iter().zip(&below) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn laplacian_spectrum() {
        let n = 50;
        let t = SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]);
        let got = t.eigenvalues_below(10.0);
        assert_eq!(got.len(), n);
        for (k, lam) in got.iter().enumerate() {
            let exact = 2.0 - 2.0 * (std::f64::consts::PI * (k + 1) as f64 / (n + 1) as f64).cos();
            assert!((lam - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn kth_eigenvalue_and_norm() {
        let t = sample(30);
        let all = t.eigenvalues_below(f64::INFINITY);
        assert!((t.kth_eigenvalue(7) - all[7]).abs() < 1e-13);
        let norm = all[0].abs().max(all[29].abs());
        assert!((t.spectral_norm() - norm).abs() < 1e-13);
    }

    #[test]
    fn shifted_solve_is_inverse() {
        let t = sample(40);
        let b: Vec<f64> = (0..40).map(|i| (i as f64).sin()).collect();
        let y = t.solve_shifted(0.37, &b);
        let r = t.matvec(&y);
        for i in 0..40 {
            assert!((r[i] - 0.37 * y[i] - b[i]).abs() < 1e-10);
        }
    }

    #[test]
    fn inverse_iteration_eigenvector() {
        let t = sample(40);
        let lam = t.eigenvalues_below(f64::INFINITY)[3];
        let v = t.eigenvector(lam);
        let r = t.matvec(&v);
        let res: f64 = r.iter().zip(&v).map(|(a, b)| (a - lam * b).powi(2)).sum::<f64>().sqrt();
        assert!(res < 1e-10, "residual {res}");
    }
}
