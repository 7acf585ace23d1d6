//! Smooth monotone step: 0 for `s ≤ 0`, 1 for `s ≥ 1`, C^∞ in between.

use super::taylor::Taylor;

fn f(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        (-1.0 / s).exp()
    }
}

fn df(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else {
        f(s) / (s * s)
    }
}

pub(crate) fn smooth_step(s: f64) -> f64 {
    if s <= 0.0 {
        0.0
    } else if s >= 1.0 {
        1.0
    } else {
        f(s) / (f(s) + f(1.0 - s))
    }
}

pub(crate) fn smooth_step_prime(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    let (a, b) = (f(s), f(1.0 - s));
    (df(s) * b + a * df(1.0 - s)) / ((a + b) * (a + b))
}

/// Taylor expansion of the step composed with a series `s`.
pub(crate) fn smooth_step_taylor(s: &Taylor) -> Taylor {
    let order = s.order();
    let s0 = s.c[0];
    if s0 <= 0.0 {
        return Taylor::constant(0.0, order);
    }
    if s0 >= 1.0 {
        return Taylor::constant(1.0, order);
    }
    let a = s.recip().scale(-1.0).exp();
    let one_minus = s.scale(-1.0).add_scalar(1.0);
    let b = one_minus.recip().scale(-1.0).exp();
    a.div(&a.add(&b))
}
