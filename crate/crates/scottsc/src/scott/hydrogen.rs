use num_rational::Ratio;
use serde::{Deserialize, Serialize};

/// Exact rationals for the hydrogen bookkeeping.
pub type Rational = Ratio<i128>;

/// Largest `n ≥ 0` with `n ≤ z/(2h)`, tolerant of rounding at exact boundaries.
fn level_count(z: f64, h: f64) -> u64 {
    let x = z / (2.0 * h);
    (x * (1.0 + 4.0 * f64::EPSILON)).floor().max(0.0) as u64
}

/// `Tr[-h²Δ - z/|x| + 1]_- = Σ_{1≤n≤z/(2h)} (n² - z²/(4h²))`.
pub fn hydrogen_exact_sum(z: f64, h: f64) -> f64 {
    let k = level_count(z, h) as f64;
    let x = z / (2.0 * h);
    -k * x * x + k * (k + 1.0) * (2.0 * k + 1.0) / 6.0
}

/// [`hydrogen_exact_sum`] in exact arithmetic.
pub fn hydrogen_exact_sum_rational(z: Rational, h: Rational) -> Rational {
    let bound = z / (h * 2);
    let k = bound.floor().to_integer().max(0);
    let head = -Rational::from_integer(k) * z * z / (h * h * 4);
    head + Rational::new(k * (k + 1) * (2 * k + 1), 6)
}

/// Two-term expansion of the hydrogen sum at `h = z/(2K)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HydrogenExpansion {
    pub h: Rational,
    pub sum: Rational,
    /// `-z³/(12h³)`.
    pub leading: Rational,
    /// `z²/(8h²)`.
    pub scott: Rational,
    /// `sum - leading - scott`.
    pub remainder: Rational,
}

pub fn hydrogen_expansion_check(z: Rational, k: u32) -> HydrogenExpansion {
    let h = z / Rational::from_integer(2 * i128::from(k.max(1)));
    let sum = hydrogen_exact_sum_rational(z, h);
    let leading = -z * z * z / (h * h * h * 12);
    let scott = z * z / (h * h * 8);
    HydrogenExpansion { h, sum, leading, scott, remainder: sum - leading - scott }
}

/// `(1/(8h²)) Σ_k z_k²`.
pub fn scott_term(charges: &[f64], h: f64) -> f64 {
    charges.iter().map(|z| z * z).sum::<f64>() / (8.0 * h * h)
}
