use std::sync::Arc;

use crate::error::Result;
use crate::numerics::quadrature::{gauss_panels, trapezoid};
use crate::numerics::Grid1D;

use super::line::neg_sum_1d;
use super::radial::{neg_sum_radial, RadialFn, RadialProblem};

/// Potential and discretization for a Lieb-Thirring ratio.
#[derive(Clone)]
pub enum LtPotential {
    /// `n = 1` on a uniform grid.
    Line { v: Arc<dyn Fn(f64) -> f64 + Send + Sync>, grid: Grid1D },
    /// `n = 3` radial potential; `problem.potential` is `V`.
    Radial { problem: RadialProblem },
}

fn radial_moment(v: &RadialFn, r_max: f64) -> f64 {
    // r = t² removes the r^{-1/2}-type behaviour of Coulomb-like wells
    let g = |t: f64| {
        let r = t * t;
        let vm = (-v(r)).max(0.0);
        4.0 * std::f64::consts::PI * r * r * vm.powf(2.5) * 2.0 * t
    };
    gauss_panels(g, 0.0, r_max.sqrt(), 2000)
}

/// `|Tr[-h²Δ + V]_-| / (h^{-n} ∫|V_-|^{1+n/2})`.
///
/// Returns `Some(0.0)` when there is no negative part at all and `None` when
/// only the denominator vanishes.
pub fn lieb_thirring_ratio(potential: &LtPotential, h: f64) -> Result<Option<f64>> {
    let (trace, moment, n) = match potential {
        LtPotential::Line { v, grid } => {
            let s = neg_sum_1d(|x| v(x), h, grid, None)?;
            let y: Vec<f64> = grid.points().iter().map(|&x| (-v(x)).max(0.0).powf(1.5)).collect();
            (s.value, trapezoid(grid.points(), &y), 1)
        }
        LtPotential::Radial { problem } => {
            let mut p = problem.clone();
            p.h = h;
            let s = neg_sum_radial(&p, 0.0)?;
            (s.total, radial_moment(&p.potential, p.grid.r_max), 3)
        }
    };
    if moment == 0.0 {
        return Ok(if trace == 0.0 { Some(0.0) } else { None });
    }
    Ok(Some(trace.abs() / (h.powi(-n) * moment)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nonnegative_potential_has_zero_ratio() {
        let grid = Grid1D::uniform(-3.0, 3.0, 301).unwrap();
        let p = LtPotential::Line { v: Arc::new(|x| x * x), grid };
        assert_eq!(lieb_thirring_ratio(&p, 0.2).unwrap(), Some(0.0));
    }

    #[test]
    fn harmonic_well_ratio_is_positive() {
        let grid = Grid1D::uniform(-5.0, 5.0, 1001).unwrap();
        let p = LtPotential::Line { v: Arc::new(|x| x * x - 1.0), grid };
        let r = lieb_thirring_ratio(&p, 0.2).unwrap().unwrap();
        assert!(r > 0.0 && r.is_finite());
    }
}
