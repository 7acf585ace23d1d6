use crate::error::{Error, Result};
use crate::numerics::{Bump, Grid1D, GridKind};
use crate::Warning;

use super::tridiag::SymTridiagonal;
use super::DEFAULT_REFINEMENT_TOLERANCE;

/// `-h² d²/dx² + V` on a uniform grid, Dirichlet at both ends, 3-point Laplacian.
#[derive(Debug, Clone)]
pub struct LineOperator {
    pub grid: Grid1D,
    pub h: f64,
    /// Potential on the interior nodes.
    pub potential: Vec<f64>,
}

impl LineOperator {
    pub fn interior(&self) -> &[f64] {
        let p = self.grid.points();
        &p[1..p.len() - 1]
    }

    /// Matrix of `φ H φ` for a localization vector on the interior nodes.
    pub fn localized(&self, phi: Option<&[f64]>) -> SymTridiagonal {
        let dx = self.grid.spacing();
        let k = self.h * self.h / (dx * dx);
        let n = self.potential.len();
        let ph = |i: usize| phi.map_or(1.0, |p| p[i]);
        let d = (0..n).map(|i| ph(i) * ph(i) * (2.0 * k + self.potential[i])).collect();
        let e = (0..n - 1).map(|i| -k * ph(i) * ph(i + 1)).collect();
        SymTridiagonal::new(d, e)
    }

    pub fn matrix(&self) -> SymTridiagonal {
        self.localized(None)
    }
}

pub fn line_operator<V: Fn(f64) -> f64>(v: V, h: f64, grid: &Grid1D) -> Result<LineOperator> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(Error::invalid(format!("h must be positive, got {h}")));
    }
    if grid.kind() != GridKind::Uniform {
        return Err(Error::invalid("line operator needs a uniform grid"));
    }
    let p = grid.points();
    let potential: Vec<f64> = p[1..p.len() - 1].iter().map(|&x| v(x)).collect();
    if potential.iter().any(|x| !x.is_finite()) {
        return Err(Error::invalid("potential is not finite on the grid"));
    }
    Ok(LineOperator { grid: grid.clone(), h, potential })
}

/// Negative-eigenvalue sum with its refinement history.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeSum {
    /// Richardson-extrapolated value.
    pub value: f64,
    pub coarse: f64,
    pub fine: f64,
    pub warnings: Vec<Warning>,
}

pub(crate) fn richardson(coarse: f64, fine: f64) -> f64 {
    (4.0 * fine - coarse) / 3.0
}

pub(crate) fn refinement_warning(context: &str, coarse: f64, fine: f64, tol: f64) -> Option<Warning> {
    let scale = fine.abs().max(coarse.abs());
    if scale == 0.0 {
        return None;
    }
    let rel = (fine - coarse).abs() / scale;
    (rel > tol).then(|| Warning::Accuracy { context: context.to_string(), relative_change: rel, tolerance: tol })
}

fn localized_sum<V: Fn(f64) -> f64>(v: &V, h: f64, grid: &Grid1D, bump: Option<&Bump>) -> Result<f64> {
    let op = line_operator(v, h, grid)?;
    let phi: Option<Vec<f64>> = bump.map(|b| op.interior().iter().map(|&x| b.value(&[x])).collect());
    let t = match &phi {
        None => op.matrix(),
        Some(p) => {
            // drop rows where the localization vanishes; they decouple with eigenvalue 0
            let idx: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0.0).collect();
            if idx.is_empty() {
                return Ok(0.0);
            }
            let full = op.localized(Some(p));
            let d = idx.iter().map(|&i| full.d[i]).collect();
            let e = idx.windows(2).map(|w| if w[1] == w[0] + 1 { full.e[w[0]] } else { 0.0 }).collect();
            SymTridiagonal::new(d, e)
        }
    };
    Ok(t.eigenvalues_below(-t.rounding_floor()).iter().sum())
}

/// `Tr[φ(-h²d²/dx² + V)φ]_-` on `grid` and its refinement, Richardson-extrapolated.
pub fn neg_sum_1d<V: Fn(f64) -> f64>(v: V, h: f64, grid: &Grid1D, bump: Option<&Bump>) -> Result<NegativeSum> {
    if let Some(b) = bump {
        if b.dim() != 1 {
            return Err(Error::invalid("line localization needs a 1D bump"));
        }
        if b.center[0] - b.radius < grid.first() || b.center[0] + b.radius > grid.last() {
            return Err(Error::invalid("bump support extends beyond the grid"));
        }
    }
    let coarse = localized_sum(&v, h, grid, bump)?;
    let fine = localized_sum(&v, h, &grid.refined(), bump)?;
    let warnings = refinement_warning("neg_sum_1d", coarse, fine, DEFAULT_REFINEMENT_TOLERANCE).into_iter().collect();
    Ok(NegativeSum { value: richardson(coarse, fine), coarse, fine, warnings })
}
