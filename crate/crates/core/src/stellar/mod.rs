//! Distributions whose zeros are a prescribed planar point set, and the
//! experiment comparing them with their semi-classical portraits.

mod experiment;
mod hermite;

pub use experiment::{
    match_minima, quantize_stellar, stellar_experiment, symmetry_residual, MinimaSummary,
    StellarExperiment, StellarParams, StellarQuantization, StellarReport, ZeroMatch,
};
pub use hermite::{
    gaussian_rates, hermite_gram, hermite_gram_matrix, hermite_grid, hermite_h, hermite_norm,
    GRAM_TAIL_TOLERANCE, MAX_HERMITE_ORDER,
};

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Distribution, Grid1D, PhaseSpaceGrid};
use crate::Complex64;

use hermite::{check_s, hermite_coefficients};

/// Largest outside-grid mass fraction accepted by [`stellar_distribution`].
pub const LEAKAGE_TOLERANCE: f64 = 1e-6;

/// A point `b + iω` of the plane, serialized as `{re, im}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlanarPoint {
    pub re: f64,
    pub im: f64,
}

impl From<PlanarPoint> for Complex64 {
    fn from(p: PlanarPoint) -> Self {
        Complex64::new(p.re, p.im)
    }
}

impl From<Complex64> for PlanarPoint {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

/// Zeros `z_i = b_i + iω_i` of the polynomial `p(z) = ∏ (z − z_i)`.
/// Repeated points count with multiplicity.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ZeroSet {
    points: Vec<Complex64>,
}

impl ZeroSet {
    pub fn new(points: Vec<Complex64>) -> Result<Self> {
        if points.len() > MAX_HERMITE_ORDER {
            return Err(Error::InvalidParameter(format!(
                "at most {MAX_HERMITE_ORDER} zeros are supported, got {}",
                points.len()
            )));
        }
        if points.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParameter("zeros must be finite".into()));
        }
        Ok(Self { points })
    }

    /// The origin together with the five fifth roots of unity.
    pub fn pentagon() -> Self {
        let mut points = vec![Complex64::new(0.0, 0.0)];
        points.extend((1..=5).map(|m| Complex64::from_polar(1.0, 2.0 * PI * m as f64 / 5.0)));
        Self { points }
    }

    pub fn from_planar(points: &[PlanarPoint]) -> Result<Self> {
        Self::new(points.iter().map(|&p| p.into()).collect())
    }

    pub fn to_planar(&self) -> Vec<PlanarPoint> {
        self.points.iter().map(|&z| z.into()).collect()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    /// `p(z) = ∏ (z − z_i)`.
    pub fn polynomial(&self, z: Complex64) -> Complex64 {
        self.points.iter().map(|zi| z - zi).product()
    }

    /// Monomial coefficients of `p`, lowest degree first.
    pub fn coefficients(&self) -> Vec<Complex64> {
        let mut c = vec![Complex64::new(1.0, 0.0)];
        for zi in &self.points {
            let mut next = vec![Complex64::new(0.0, 0.0); c.len() + 1];
            for (k, ck) in c.iter().enumerate() {
                next[k + 1] += ck;
                next[k] -= ck * zi;
            }
            c = next;
        }
        c
    }

    /// Coefficients `d_k` of `p = Σ d_k H_k`.
    pub fn hermite_expansion(&self) -> Vec<Complex64> {
        let n = self.degree();
        let basis = hermite_coefficients(n);
        let mut rest = self.coefficients();
        let mut d = vec![Complex64::new(0.0, 0.0); n + 1];
        for k in (0..=n).rev() {
            let dk = rest[k] / basis[k][k];
            for (i, h) in basis[k].iter().enumerate() {
                rest[i] -= dk * h;
            }
            d[k] = dk;
        }
        d
    }

    /// Rigid rotation by `angle` about the origin.
    pub fn rotated(&self, angle: f64) -> Self {
        let r = Complex64::from_polar(1.0, angle);
        Self { points: self.points.iter().map(|z| z * r).collect() }
    }

    /// Image under the axis swap `(b, ω) → (ω, b)`, i.e. `z ↦ i·conj(z)`.
    pub fn axis_swapped(&self) -> Self {
        let i = Complex64::new(0.0, 1.0);
        Self { points: self.points.iter().map(|z| i * z.conj()).collect() }
    }
}

/// Unnormalized density `e^{−β_b b² − β_ω ω²} |p(b + iω)|²`.
pub fn stellar_density(zeros: &ZeroSet, rate_b: f64, rate_omega: f64, omega: f64, b: f64) -> f64 {
    (-rate_b * b * b - rate_omega * omega * omega).exp()
        * zeros.polynomial(Complex64::new(b, omega)).norm_sqr()
}

/// `𝒩 = ∫∫ e^{−(1−s)b² − (1/s−1)ω²} |p(b+iω)|² dω db / 2π`, exactly, from the
/// Hermite expansion of `p` and the orthogonality of `H_n(b+iω)` under that
/// weight.
pub fn stellar_normalization(zeros: &ZeroSet, s: f64) -> Result<f64> {
    check_s(s)?;
    let mut total = 0.0;
    for (k, d) in zeros.hermite_expansion().iter().enumerate() {
        total += d.norm_sqr() * hermite_norm(k, s)?;
    }
    Ok(total / (2.0 * PI))
}

/// Sampled stellar distribution with its normalization data.
#[derive(Debug, Clone, PartialEq)]
pub struct StellarDistribution {
    pub distribution: Distribution,
    /// Exact normalization constant `𝒩`.
    pub normalization: f64,
    /// Fraction of the exact mass outside the lattice.
    pub tail: f64,
}

/// `w_{s,n}(ω,b) = e^{−(1−s)b² − (1/s−1)ω²} |p(b+iω)|² / 𝒩`, sampled and then
/// rescaled so its lattice mass is exactly 1.
///
/// Fails with [`Error::MassLeakage`] when more than [`LEAKAGE_TOLERANCE`] of
/// the exact mass lies off the lattice.
pub fn stellar_distribution(
    zeros: &ZeroSet,
    s: f64,
    grid: &PhaseSpaceGrid,
) -> Result<StellarDistribution> {
    let (rb, rw) = gaussian_rates(s)?;
    let normalization = stellar_normalization(zeros, s)?;
    let nb = grid.b.count();
    let values: Vec<f64> = (0..grid.len())
        .into_par_iter()
        .map(|idx| {
            let (omega, b) = grid.node(idx / nb, idx % nb);
            stellar_density(zeros, rb, rw, omega, b) / normalization
        })
        .collect();
    let raw = Distribution::new(*grid, values)?;
    let tail = 1.0 - raw.mass();
    if tail > LEAKAGE_TOLERANCE {
        return Err(Error::MassLeakage { tail });
    }
    Ok(StellarDistribution {
        distribution: raw.normalize()?,
        normalization,
        tail,
    })
}

/// Lattice `[−32, 32)²` with 512 nodes per axis, wide enough for the
/// pentagon distribution at `s = 0.945`.
pub fn stellar_grid() -> PhaseSpaceGrid {
    let axis = Grid1D::spanning(-32.0, 32.0, 512).expect("valid axis");
    PhaseSpaceGrid::new(axis, axis)
}
