use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GridKind {
    Uniform,
    /// Geometric progression; `spacing` holds the constant step in `ln x`.
    Logarithmic,
}

/// Ordered 1D grid with at least 8 points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grid1D {
    points: Vec<f64>,
    spacing: f64,
    kind: GridKind,
}

impl Grid1D {
    pub const MIN_POINTS: usize = 8;

    /// `n` points from `start` to `end` inclusive.
    pub fn uniform(start: f64, end: f64, n: usize) -> Result<Self> {
        check_count(n)?;
        if !(start.is_finite() && end.is_finite() && end > start) {
            return Err(Error::invalid(format!("uniform grid needs start < end, got [{start}, {end}]")));
        }
        let spacing = (end - start) / (n - 1) as f64;
        let points = (0..n).map(|i| start + spacing * i as f64).collect();
        Ok(Grid1D { points, spacing, kind: GridKind::Uniform })
    }

    /// `n` points with spacing `dx` starting at `start`.
    pub fn uniform_from(start: f64, dx: f64, n: usize) -> Result<Self> {
        check_count(n)?;
        if !(dx > 0.0 && dx.is_finite() && start.is_finite()) {
            return Err(Error::invalid(format!("grid spacing must be positive, got {dx}")));
        }
        let points = (0..n).map(|i| start + dx * i as f64).collect();
        Ok(Grid1D { points, spacing: dx, kind: GridKind::Uniform })
    }

    /// `n` geometrically spaced points from `start` to `end` inclusive.
    pub fn logarithmic(start: f64, end: f64, n: usize) -> Result<Self> {
        check_count(n)?;
        if !(start > 0.0 && end > start && end.is_finite()) {
            return Err(Error::invalid(format!("log grid needs 0 < start < end, got [{start}, {end}]")));
        }
        let (l0, l1) = (start.ln(), end.ln());
        let spacing = (l1 - l0) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| (l0 + spacing * i as f64).exp()).collect();
        points[0] = start;
        points[n - 1] = end;
        Ok(Grid1D { points, spacing, kind: GridKind::Logarithmic })
    }

    /// Grid with every point multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::invalid(format!("grid scale factor must be positive, got {factor}")));
        }
        let points = self.points.iter().map(|x| x * factor).collect();
        let spacing = match self.kind {
            GridKind::Uniform => self.spacing * factor,
            GridKind::Logarithmic => self.spacing,
        };
        Ok(Grid1D { points, spacing, kind: self.kind })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Step in `x` for uniform grids, step in `ln x` for logarithmic ones.
    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn first(&self) -> f64 {
        self.points[0]
    }

    pub fn last(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Trapezoid weights matching the grid nodes.
    pub fn trapezoid_weights(&self) -> Vec<f64> {
        let x = &self.points;
        let n = x.len();
        let mut w = vec![0.0; n];
        for i in 0..n - 1 {
            let d = 0.5 * (x[i + 1] - x[i]);
            w[i] += d;
            w[i + 1] += d;
        }
        w
    }

    /// Same kind of grid with the interval count doubled.
    pub fn refined(&self) -> Self {
        let n = 2 * (self.len() - 1) + 1;
        match self.kind {
            GridKind::Uniform => Grid1D::uniform(self.first(), self.last(), n).expect("refinement of valid grid"),
            GridKind::Logarithmic => Grid1D::logarithmic(self.first(), self.last(), n).expect("refinement of valid grid"),
        }
    }
}

fn check_count(n: usize) -> Result<()> {
    if n < Grid1D::MIN_POINTS {
        return Err(Error::invalid(format!("grid needs at least {} points, got {n}", Grid1D::MIN_POINTS)));
    }
    Ok(())
}
