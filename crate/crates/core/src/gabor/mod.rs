//! Gabor analysis on the real line: displacement operators, the Gabor
//! transform with a unit-norm probe, reconstruction, covariance and the
//! time-frequency uncertainty product.
//!
//! The transform is `S(ω,b) = ∫ e^{-iωt} ψ̄(t−b) s(t) dt` and the displacement
//! operator acts as `D(ω,b)s(t) = e^{iω(t−b/2)} s(t−b)`; the two differ by the
//! phase `e^{iωb/2}`.

mod displace;
mod signals;
mod transform;
mod uncertainty;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{Grid1D, PhaseSpaceGrid, SampledSignal};
use crate::Complex64;

pub use displace::{displace, Displacer};
pub use signals::{gaussian_signal, hermite_gaussian, TestSignal};
pub use transform::{
    covariance_phase, covariance_residual, gabor_reconstruct, gabor_transform, CovarianceReport,
};
pub use uncertainty::{uncertainty_product, UncertaintyReport};

/// Tolerance on the probe norm.
pub const PROBE_NORM_TOLERANCE: f64 = 1e-10;

/// Default time axis: `[−20, 20)` with 1024 samples.
pub fn default_time_grid() -> Grid1D {
    Grid1D::spanning(-20.0, 20.0, 1024).expect("valid grid")
}

/// Default time-frequency lattice: `[−16, 16)²` with 256 nodes per axis.
pub fn default_tf_grid() -> PhaseSpaceGrid {
    let axis = Grid1D::spanning(-16.0, 16.0, 256).expect("valid grid");
    PhaseSpaceGrid::new(axis, axis)
}

/// Unit-norm analysis window.
#[derive(Debug, Clone, PartialEq)]
pub struct Probe {
    signal: SampledSignal,
    id: String,
}

impl Probe {
    pub fn new(signal: SampledSignal, id: impl Into<String>) -> Result<Self> {
        let norm = signal.norm();
        if (norm - 1.0).abs() > PROBE_NORM_TOLERANCE {
            return Err(Error::Unnormalized { mass: norm * norm });
        }
        Ok(Self {
            signal,
            id: id.into(),
        })
    }

    /// Gaussian probe `(πw)^{-1/4} e^{-t²/(2w)}`.
    pub fn gaussian(width: f64, grid: Grid1D) -> Result<Self> {
        let s = gaussian_signal(width, 0.0, grid)?;
        Self::new(s, format!("gaussian(width={width})"))
    }

    pub fn signal(&self) -> &SampledSignal {
        &self.signal
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn grid(&self) -> Grid1D {
        self.signal.grid
    }
}

/// Gabor coefficients on a phase-space lattice, stored ω-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TFCoefficients {
    pub grid: PhaseSpaceGrid,
    #[serde(skip)]
    pub values: Vec<Complex64>,
    pub probe: String,
}

impl TFCoefficients {
    pub fn zeros(grid: PhaseSpaceGrid, probe: impl Into<String>) -> Self {
        Self {
            values: vec![Complex64::new(0.0, 0.0); grid.len()],
            grid,
            probe: probe.into(),
        }
    }

    pub fn value(&self, i_omega: usize, i_b: usize) -> Complex64 {
        self.values[self.grid.index(i_omega, i_b)]
    }

    /// `Σ |S|² Δω Δb / 2π`.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.cell_measure()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn magnitudes(&self) -> Vec<f64> {
        self.values.iter().map(|v| v.norm()).collect()
    }
}

pub(crate) fn same_grid(a: &Grid1D, b: &Grid1D) -> Result<()> {
    if a != b {
        return Err(Error::GridMismatch(format!(
            "time grids differ: {a:?} vs {b:?}"
        )));
    }
    Ok(())
}
