use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Uniform one-dimensional grid `start + i·step`, `0 <= i < count`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid1D {
    start: f64,
    step: f64,
    count: usize,
}

impl Grid1D {
    pub fn new(start: f64, step: f64, count: usize) -> Result<Self> {
        if !start.is_finite() || !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "grid step must be positive and finite (start {start}, step {step})"
            )));
        }
        if count < 2 {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least 2 points, got {count}"
            )));
        }
        Ok(Self { start, step, count })
    }

    /// `count` points covering `[lo, hi)` with the right endpoint excluded, as
    /// for a periodic grid.
    pub fn spanning(lo: f64, hi: f64, count: usize) -> Result<Self> {
        if !(hi > lo) {
            return Err(Error::InvalidParameter(format!(
                "empty interval [{lo}, {hi})"
            )));
        }
        Self::new(lo, (hi - lo) / count as f64, count)
    }

    /// `count` points covering `[-half_width, half_width]` with both endpoints,
    /// so the grid is symmetric under `x -> -x`. `count` must be odd.
    pub fn symmetric(half_width: f64, count: usize) -> Result<Self> {
        if count % 2 == 0 {
            return Err(Error::InvalidParameter(format!(
                "symmetric grid needs an odd point count, got {count}"
            )));
        }
        if !(half_width > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "half width must be positive, got {half_width}"
            )));
        }
        let half = (count - 1) / 2;
        let step = half_width / half as f64;
        Self::new(-(half as f64) * step, step, count)
    }

    /// The grid `[0, 2π)` with `count` points.
    pub fn circle(count: usize) -> Result<Self> {
        Self::new(0.0, 2.0 * PI / count as f64, count)
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn point(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn last(&self) -> f64 {
        self.point(self.count - 1)
    }

    /// Length of the periodic cell `count·step`.
    pub fn period(&self) -> f64 {
        self.count as f64 * self.step
    }

    pub fn points(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }

    /// The same grid translated by `delta`.
    pub fn shifted(&self, delta: f64) -> Self {
        Self {
            start: self.start + delta,
            ..*self
        }
    }

    /// Index of the node sitting at 0, if the origin is a grid node.
    pub fn origin_index(&self) -> Option<usize> {
        let k = -self.start / self.step;
        let r = k.round();
        if (k - r).abs() > 1e-9 || r < 0.0 || r >= self.count as f64 {
            return None;
        }
        Some(r as usize)
    }

    pub fn max_abs(&self) -> f64 {
        self.start.abs().max(self.last().abs())
    }
}

/// Rectangular `(ω, b)` lattice. Values on it are stored with ω as the outer
/// (row) index: `index(iω, ib) = iω·n_b + ib`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseSpaceGrid {
    pub omega: Grid1D,
    pub b: Grid1D,
}

impl PhaseSpaceGrid {
    pub fn new(omega: Grid1D, b: Grid1D) -> Self {
        Self { omega, b }
    }

    /// Weight of one cell under `dω db / 2π`.
    pub fn cell_measure(&self) -> f64 {
        self.omega.step() * self.b.step() / (2.0 * PI)
    }

    pub fn len(&self) -> usize {
        self.omega.count() * self.b.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, i_omega: usize, i_b: usize) -> usize {
        i_omega * self.b.count() + i_b
    }

    pub fn node(&self, i_omega: usize, i_b: usize) -> (f64, f64) {
        (self.omega.point(i_omega), self.b.point(i_b))
    }

    /// Evaluates `f(ω, b)` at every node in storage order.
    pub fn sample<T>(&self, f: impl Fn(f64, f64) -> T) -> Vec<T> {
        let mut out = Vec::with_capacity(self.len());
        for i in 0..self.omega.count() {
            let w = self.omega.point(i);
            for j in 0..self.b.count() {
                out.push(f(w, self.b.point(j)));
            }
        }
        out
    }
}

/// Non-negative function on a phase-space grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    grid: PhaseSpaceGrid,
    values: Vec<f64>,
}

impl Distribution {
    pub fn new(grid: PhaseSpaceGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v < 0.0) {
            return Err(Error::Domain(format!(
                "distribution values must be finite and non-negative, found {v}"
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: PhaseSpaceGrid, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.sample(f))
    }

    pub fn grid(&self) -> &PhaseSpaceGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, i_omega: usize, i_b: usize) -> f64 {
        self.values[self.grid.index(i_omega, i_b)]
    }

    /// `∫∫ w dω db / 2π` by the rectangle rule.
    pub fn mass(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.cell_measure()
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    pub fn normalize(&self) -> Result<Self> {
        let mass = self.mass();
        if !(mass > 0.0) {
            return Err(Error::Unnormalized { mass });
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v / mass).collect(),
        })
    }

    pub fn is_normalized(&self, tol: f64) -> bool {
        (self.mass() - 1.0).abs() <= tol
    }

    /// Largest value found on the outer ring of the grid, relative to the
    /// global maximum.
    pub fn boundary_ratio(&self) -> f64 {
        let max = self.max();
        if max == 0.0 {
            return 0.0;
        }
        let (nw, nb) = (self.grid.omega.count(), self.grid.b.count());
        let mut edge: f64 = 0.0;
        for i in 0..nw {
            edge = edge.max(self.value(i, 0)).max(self.value(i, nb - 1));
        }
        for j in 0..nb {
            edge = edge.max(self.value(0, j)).max(self.value(nw - 1, j));
        }
        edge / max
    }
}

/// Complex-valued function on a phase-space grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexGrid {
    pub grid: PhaseSpaceGrid,
    pub values: Vec<Complex64>,
}

impl ComplexGrid {
    pub fn new(grid: PhaseSpaceGrid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                actual: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_real(w: &Distribution) -> Self {
        Self {
            grid: *w.grid(),
            values: w.values().iter().map(|&v| Complex64::new(v, 0.0)).collect(),
        }
    }

    pub fn value(&self, i_omega: usize, i_b: usize) -> Complex64 {
        self.values[self.grid.index(i_omega, i_b)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Complex samples of a function on a uniform time (or angle) grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledSignal {
    pub grid: Grid1D,
    pub values: Vec<Complex64>,
}

impl SampledSignal {
    pub fn new(grid: Grid1D, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.count() {
            return Err(Error::DimensionMismatch {
                expected: grid.count(),
                actual: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid1D, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            values: grid.points().map(f).collect(),
            grid,
        }
    }

    pub fn zeros(grid: Grid1D) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); grid.count()],
            grid,
        }
    }

    /// `Δt·Σ|s|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.step()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `Δt·Σ conj(self)·other`.
    pub fn inner(&self, other: &SampledSignal) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.grid.step()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0) {
            return Err(Error::Domain("cannot normalize a zero signal".into()));
        }
        Ok(Self {
            grid: self.grid,
            values: self.values.iter().map(|v| v / n).collect(),
        })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Largest magnitude among the first and last two samples, relative to the
    /// maximum magnitude.
    pub fn edge_ratio(&self) -> f64 {
        edge_ratio(&self.values)
    }

    /// Max-norm distance to another signal on the same grid.
    pub fn max_abs_diff(&self, other: &SampledSignal) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Relative L² distance `‖self − reference‖ / ‖reference‖`.
    pub fn relative_l2_error(&self, reference: &SampledSignal) -> f64 {
        let diff: f64 = self
            .values
            .iter()
            .zip(&reference.values)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = reference.values.iter().map(|v| v.norm_sqr()).sum();
        (diff / den).sqrt()
    }
}

pub(crate) fn edge_ratio(values: &[Complex64]) -> f64 {
    let max = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return 0.0;
    }
    let n = values.len();
    let k = n.min(2);
    let edge = values[..k]
        .iter()
        .chain(&values[n - k..])
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    edge / max
}
