use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Phase-space scales: semiclassical `h`, localization `a`, derived `b = 2a/(1+h²a²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoherentParams {
    h: f64,
    a: f64,
    n: usize,
    b: f64,
}

impl CoherentParams {
    /// Accepts `0 < a ≤ 1/h`; the endpoint `a = 1/h` is the projection limit.
    pub fn new(h: f64, a: f64, n: usize) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::invalid(format!("h must be positive, got {h}")));
        }
        if !(a > 0.0 && a * h <= 1.0) {
            return Err(Error::invalid(format!("need 0 < a <= 1/h, got a = {a}, h = {h}")));
        }
        if n == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        Ok(CoherentParams { h, a, n, b: 2.0 * a / (1.0 + h * h * a * a) })
    }

    pub fn from_rule(h: f64, rule: ARule, n: usize) -> Result<Self> {
        CoherentParams::new(h, rule.apply(h), n)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Phase-space width `1/√(2a)` of the squared kernel in each of `u` and `q`.
    pub fn sigma(&self) -> f64 {
        (0.5 / self.a).sqrt()
    }

    /// Whether `a < 1/h`, which the weight `w` requires.
    pub fn is_strict(&self) -> bool {
        self.a * self.h < 1.0
    }
}

/// Rule `a = h^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ARule {
    pub exponent: f64,
}

impl ARule {
    pub const DEFAULT: ARule = ARule { exponent: -0.8 };

    pub fn apply(&self, h: f64) -> f64 {
        h.powf(self.exponent)
    }
}

impl Default for ARule {
    fn default() -> Self {
        ARule::DEFAULT
    }
}

impl fmt::Display for ARule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h^{}", self.exponent)
    }
}

impl FromStr for ARule {
    type Err = Error;

    /// Parses `h^-0.8`.
    fn from_str(s: &str) -> Result<Self> {
        let rest = s
            .trim()
            .strip_prefix("h^")
            .ok_or_else(|| Error::invalid(format!("a-rule must look like h^-0.8, got {s:?}")))?;
        let exponent: f64 =
            rest.trim().parse().map_err(|_| Error::invalid(format!("bad a-rule exponent in {s:?}")))?;
        if !exponent.is_finite() || !(-1.0..0.0).contains(&exponent) {
            return Err(Error::invalid(format!("a-rule exponent must lie in [-1, 0), got {exponent}")));
        }
        Ok(ARule { exponent })
    }
}

/// Point `(u, q)` of phase space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhasePoint {
    pub u: Vec<f64>,
    pub q: Vec<f64>,
}

impl PhasePoint {
    pub fn new(u: Vec<f64>, q: Vec<f64>) -> Result<Self> {
        if u.len() != q.len() || u.is_empty() {
            return Err(Error::invalid("u and q must be nonempty with equal dimension"));
        }
        if u.iter().chain(&q).any(|c| !c.is_finite()) {
            return Err(Error::invalid("phase point must be finite"));
        }
        Ok(PhasePoint { u, q })
    }

    pub fn line(u: f64, q: f64) -> Self {
        PhasePoint { u: vec![u], q: vec![q] }
    }

    pub fn dim(&self) -> usize {
        self.u.len()
    }
}
