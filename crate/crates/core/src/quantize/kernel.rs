use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Checked, Error, Result, Warning};
use crate::gabor::same_grid;
use crate::numerics::fourier::{edge_warnings, SpectralShifter};
use crate::numerics::{ComplexGrid, Distribution, Grid1D, SampledSignal, EDGE_TOLERANCE};
use crate::Complex64;

/// Allowed deviation of a distribution's mass from 1.
pub const MASS_TOLERANCE: f64 = 1e-6;

pub(crate) fn check_normalized(w: &Distribution) -> Result<()> {
    let mass = w.mass();
    if (mass - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::Unnormalized { mass });
    }
    Ok(())
}

/// Integral operator on a sampled time axis:
/// `(K s)(t_i) = Δt Σ_j K(t_i, t_j) s(t_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorKernel {
    pub time_grid: Grid1D,
    pub entries: DMatrix<Complex64>,
}

impl OperatorKernel {
    pub fn new(time_grid: Grid1D, entries: DMatrix<Complex64>) -> Result<Self> {
        let n = time_grid.count();
        if entries.nrows() != n || entries.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: entries.nrows().max(entries.ncols()),
            });
        }
        Ok(Self { time_grid, entries })
    }

    /// Kernel of the rank-one operator `|u⟩⟨v|`.
    pub fn outer(u: &SampledSignal, v: &SampledSignal) -> Result<Self> {
        same_grid(&u.grid, &v.grid)?;
        let n = u.grid.count();
        let entries = DMatrix::from_fn(n, n, |i, j| u.values[i] * v.values[j].conj());
        Self::new(u.grid, entries)
    }

    pub fn quad_weight(&self) -> f64 {
        self.time_grid.step()
    }

    pub fn dim(&self) -> usize {
        self.time_grid.count()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[(i, j)]
    }

    /// `Δt Σ_i K(t_i, t_i)`.
    pub fn trace(&self) -> Complex64 {
        self.entries.diagonal().sum() * self.quad_weight()
    }

    pub fn apply(&self, s: &SampledSignal) -> Result<SampledSignal> {
        same_grid(&self.time_grid, &s.grid)?;
        let v = nalgebra::DVector::from_column_slice(&s.values);
        let out = (&self.entries * v) * Complex64::new(self.quad_weight(), 0.0);
        SampledSignal::new(s.grid, out.as_slice().to_vec())
    }

    /// Frobenius distance `‖K − L‖_F`, weighted as an operator norm
    /// (`Δt ‖K − L‖` entrywise).
    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (&self.entries - &other.entries).norm() * self.quad_weight()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm() * self.quad_weight()
    }
}

/// Density-operator diagnostics of a kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityReport {
    pub trace: f64,
    pub trace_imag: f64,
    pub hermiticity_defect: f64,
    pub min_eigenvalue: f64,
    pub purity: f64,
}

/// Trace, `max|K − K†|`, the smallest eigenvalue of the Hermitian part of
/// `Δt K` and the purity `Δt² Σ|K_ij|²`.
pub fn density_diagnostics(k: &OperatorKernel) -> DensityReport {
    let dt = k.quad_weight();
    let adjoint = k.entries.adjoint();
    let hermiticity_defect = (&k.entries - &adjoint)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max);
    let sym = (&k.entries + &adjoint) * Complex64::new(0.5 * dt, 0.0);
    let min_eigenvalue = sym
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min);
    let purity = k.entries.iter().map(|v| v.norm_sqr()).sum::<f64>() * dt * dt;
    let tr = k.trace();
    DensityReport {
        trace: tr.re,
        trace_imag: tr.im,
        hermiticity_defect,
        min_eigenvalue,
        purity,
    }
}

/// Probe translated to every `b` node.
fn translated(probe: &SampledSignal, b_axis: &Grid1D) -> Vec<Vec<Complex64>> {
    let shifter = SpectralShifter::new(probe.grid.count());
    let step = probe.grid.step();
    (0..b_axis.count())
        .into_par_iter()
        .map(|l| {
            let mut v = probe.values.clone();
            shifter.shift_in_place(&mut v, b_axis.point(l) / step);
            v
        })
        .collect()
}

/// Fraction of `Σ|w|` carried by frequencies beyond `π/Δt`.
fn aliased_fraction(omega: &Grid1D, nb: usize, time: &Grid1D, magnitude: impl Fn(usize, usize) -> f64) -> f64 {
    let nyquist = std::f64::consts::PI / time.step();
    let (mut total, mut beyond) = (0.0, 0.0);
    for k in 0..omega.count() {
        let row: f64 = (0..nb).map(|l| magnitude(k, l)).sum();
        total += row;
        if omega.point(k).abs() > nyquist {
            beyond += row;
        }
    }
    if total > 0.0 {
        beyond / total
    } else {
        0.0
    }
}

fn band_warnings(source: &'static str, time: &Grid1D, edge: f64, aliased: f64) -> Vec<Warning> {
    let mut warnings = Vec::new();
    if edge > EDGE_TOLERANCE {
        warnings.push(Warning::new(
            source,
            format!("weight reaches {edge:.3e} of its maximum on the lattice boundary; its band is not covered"),
        ));
    }
    if aliased > EDGE_TOLERANCE {
        warnings.push(Warning::new(
            source,
            format!(
                "{aliased:.3e} of the weight lies beyond the time-grid Nyquist frequency {:.3} and aliases",
                std::f64::consts::PI / time.step()
            ),
        ));
    }
    warnings
}

/// Kernel of `ρ_w = ∫ w(ω,b) |ψ_{ω,b}⟩⟨ψ_{ω,b}| dω db / 2π` on the probe's time
/// grid, with `ψ_{ω,b}(t) = e^{iωt} ψ(t−b)`:
///
/// `K(t,t′) = (1/√2π) Σ_l Δb ŵ_p(t′−t, b_l) ψ̄(t′−b_l) ψ(t−b_l)`, where
/// `ŵ_p(ξ,b) = (1/√2π) Σ_k Δω e^{-iω_k ξ} w(ω_k, b)` is the partial Fourier
/// transform along ω.
///
/// Refuses distributions whose mass differs from 1 by more than
/// [`MASS_TOLERANCE`].
pub fn quantize_to_kernel(w: &Distribution, probe: &SampledSignal) -> Result<Checked<OperatorKernel>> {
    check_normalized(w)?;
    let grid = *w.grid();
    let time = probe.grid;
    let n = time.count();
    let (nw, nb) = (grid.omega.count(), grid.b.count());
    let dt = time.step();

    // ŵ_p at every lag ξ_d = dΔt, d = −(n−1)..n−1, scaled by ΔωΔb/2π.
    let lags = 2 * n - 1;
    let cell = grid.cell_measure();
    let twiddle: Vec<Complex64> = (0..nw)
        .flat_map(|k| {
            let wk = grid.omega.point(k);
            (0..lags).map(move |d| Complex64::from_polar(1.0, -wk * (d as f64 - (n - 1) as f64) * dt))
        })
        .collect();
    let partial: Vec<Vec<Complex64>> = (0..nb)
        .into_par_iter()
        .map(|l| {
            let mut out = vec![Complex64::new(0.0, 0.0); lags];
            for k in 0..nw {
                let wkl = w.value(k, l) * cell;
                if wkl == 0.0 {
                    continue;
                }
                let row = &twiddle[k * lags..(k + 1) * lags];
                for (o, t) in out.iter_mut().zip(row) {
                    *o += t * wkl;
                }
            }
            out
        })
        .collect();

    let psi = translated(probe, &grid.b);
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for (psi_l, wp) in psi.iter().zip(&partial) {
                let left = psi_l[i];
                if left == Complex64::new(0.0, 0.0) {
                    continue;
                }
                // lag index of ξ = t_j − t_i is j − i + n − 1
                let lag = &wp[n - 1 - i..2 * n - 1 - i];
                for ((r, p), f) in row.iter_mut().zip(psi_l).zip(lag) {
                    *r += left * p.conj() * f;
                }
            }
            row
        })
        .collect();
    let entries = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let aliased = aliased_fraction(&grid.omega, nb, &time, |k, l| w.value(k, l));
    let mut warnings = band_warnings("quantize_to_kernel", &time, w.boundary_ratio(), aliased);
    warnings.extend(edge_warnings("quantize_to_kernel", probe));
    Ok(Checked::with_warnings(OperatorKernel::new(time, entries)?, warnings))
}

/// Kernel of `M = ∫ w(ω,b) D(ω,b) dω db / 2π` with
/// `D(ω,b)s(t) = e^{iω(t−b/2)} s(t−b)`.
///
/// Translation by `b` is the circulant band-limited shift of the time grid,
/// so `K(t_i,t_j) = (1/Δt) Σ_l σ_{b_l}(i−j) G_l(t_i)` with `σ_b` the shifted
/// unit impulse and `G_l(t) = (ΔωΔb/2π) Σ_k w(ω_k,b_l) e^{iω_k(t−b_l/2)}`.
pub fn weyl_operator_from_weight(w: &ComplexGrid, time: &Grid1D) -> Result<Checked<OperatorKernel>> {
    let grid = w.grid;
    let n = time.count();
    let dt = time.step();
    let cell = grid.cell_measure();
    let shifter = SpectralShifter::new(n);
    let per_b: Vec<(Vec<Complex64>, Vec<Complex64>)> = (0..grid.b.count())
        .into_par_iter()
        .map(|l| {
            let b = grid.b.point(l);
            let mut impulse = vec![Complex64::new(0.0, 0.0); n];
            impulse[0] = Complex64::new(1.0 / dt, 0.0);
            shifter.shift_in_place(&mut impulse, b / dt);
            let g: Vec<Complex64> = time
                .points()
                .map(|t| {
                    (0..grid.omega.count())
                        .map(|k| w.value(k, l) * Complex64::from_polar(cell, grid.omega.point(k) * (t - 0.5 * b)))
                        .sum()
                })
                .collect();
            (impulse, g)
        })
        .collect();
    let rows: Vec<Vec<Complex64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![Complex64::new(0.0, 0.0); n];
            for (sigma, g) in &per_b {
                let gi = g[i];
                if gi == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for (j, r) in row.iter_mut().enumerate() {
                    *r += sigma[(i + n - j) % n] * gi;
                }
            }
            row
        })
        .collect();
    let entries = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let max = w.max_abs();
    let (nw, nb) = (grid.omega.count(), grid.b.count());
    let mut edge: f64 = 0.0;
    for k in 0..nw {
        edge = edge.max(w.value(k, 0).norm()).max(w.value(k, nb - 1).norm());
    }
    for l in 0..nb {
        edge = edge.max(w.value(0, l).norm()).max(w.value(nw - 1, l).norm());
    }
    let ratio = if max > 0.0 { edge / max } else { 0.0 };
    let aliased = aliased_fraction(&grid.omega, nb, time, |k, l| w.value(k, l).norm());
    let warnings = band_warnings("weyl_operator_from_weight", time, ratio, aliased);
    Ok(Checked::with_warnings(OperatorKernel::new(*time, entries)?, warnings))
}
