//! Discrete Fourier conventions.
//!
//! Continuous quantities use the forward kernel `e^{-iωt}` with the symmetric
//! `1/√(2π)` normalization, `ŝ(ω) = (1/√(2π)) ∫ e^{-iωt} s(t) dt`. On a time
//! grid `t_j = t_0 + jΔt` with `N` points this is approximated by
//! `ŝ(ω) ≈ (Δt/√(2π)) Σ_j e^{-iωt_j} s_j`.
//!
//! The FFT bin `q` corresponds to the angular frequency `κ_q = 2π q'/(NΔt)`,
//! where `q' = q` for `q < N/2` and `q' = q − N` above (see
//! [`angular_frequencies`]). When `N` is even the Nyquist bin `q = N/2` is
//! shared by `±π/Δt`; spectral operators act on it through the average of the
//! two, which keeps real signals real.
//!
//! [`UniformDft`] evaluates the sum at arbitrary uniform ω grids that need not
//! coincide with FFT bins.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Checked, Error, Result, Warning};
use crate::numerics::grid::{Grid1D, SampledSignal};
use crate::numerics::EDGE_TOLERANCE;

/// Angular frequencies of the FFT bins for `n` samples spaced `step` apart,
/// in FFT storage order.
pub fn angular_frequencies(n: usize, step: f64) -> Vec<f64> {
    let base = 2.0 * PI / (n as f64 * step);
    (0..n)
        .map(|q| {
            let signed = if q < n.div_ceil(2) { q as f64 } else { q as f64 - n as f64 };
            signed * base
        })
        .collect()
}

/// Reusable FFT plans for translating length-`n` periodic sequences by
/// fractional numbers of samples.
#[derive(Clone)]
pub struct SpectralShifter {
    n: usize,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for SpectralShifter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SpectralShifter").field("n", &self.n).finish()
    }
}

impl SpectralShifter {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Replaces `values[j]` by the band-limited periodic interpolant evaluated
    /// at `j − samples`, i.e. translates the sequence right by `samples`.
    pub fn shift_in_place(&self, values: &mut [Complex64], samples: f64) {
        assert_eq!(values.len(), self.n, "shifter length mismatch");
        if samples == 0.0 {
            return;
        }
        let rounded = samples.round();
        if (samples - rounded).abs() < 1e-12 {
            let k = (rounded as i64).rem_euclid(self.n as i64) as usize;
            values.rotate_right(k);
            return;
        }
        let n = self.n;
        self.forward.process(values);
        let scale = 1.0 / n as f64;
        for (q, v) in values.iter_mut().enumerate() {
            let phase = if 2 * q == n {
                // Nyquist bin: average of the ±π phase ramps.
                Complex64::new((PI * samples).cos(), 0.0)
            } else {
                let signed = if 2 * q < n { q as f64 } else { q as f64 - n as f64 };
                Complex64::from_polar(1.0, -2.0 * PI * signed * samples / n as f64)
            };
            *v *= phase * scale;
        }
        self.inverse.process(values);
    }
}

/// Translates `signal` by `b`: returns samples of `t ↦ s(t − b)` on the same
/// grid, computed by a spectral phase ramp with periodic wrap-around.
///
/// Warns when the input does not decay at the grid edges, since wrapped
/// energy then contaminates the result.
pub fn fractional_shift(signal: &SampledSignal, b: f64) -> Checked<SampledSignal> {
    if b == 0.0 {
        return Checked::clean(signal.clone());
    }
    let shifter = SpectralShifter::new(signal.grid.count());
    let mut values = signal.values.clone();
    shifter.shift_in_place(&mut values, b / signal.grid.step());
    let out = SampledSignal {
        grid: signal.grid,
        values,
    };
    Checked::with_warnings(out, edge_warnings("fractional_shift", signal))
}

pub(crate) fn edge_warnings(source: &'static str, signal: &SampledSignal) -> Vec<Warning> {
    let ratio = signal.edge_ratio();
    if ratio > EDGE_TOLERANCE {
        vec![Warning::new(
            source,
            format!("signal edge magnitude {ratio:.3e} of its maximum; periodic wrap-around may contaminate the result"),
        )]
    } else {
        Vec::new()
    }
}

/// Dense evaluation of `Σ_j e^{-iω_k t_j} v_j` for a uniform ω grid and a
/// uniform t grid.
#[derive(Debug, Clone)]
pub struct UniformDft {
    omega: Grid1D,
    time: Grid1D,
    twiddles: Vec<Complex64>,
}

impl UniformDft {
    pub fn new(omega: Grid1D, time: Grid1D) -> Self {
        let mut twiddles = Vec::with_capacity(omega.count() * time.count());
        for w in omega.points() {
            for t in time.points() {
                twiddles.push(Complex64::from_polar(1.0, -w * t));
            }
        }
        Self {
            omega,
            time,
            twiddles,
        }
    }

    pub fn omega(&self) -> &Grid1D {
        &self.omega
    }

    pub fn time(&self) -> &Grid1D {
        &self.time
    }

    /// `out[k] = Σ_j e^{-iω_k t_j} input[j]`.
    pub fn forward(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        let nt = self.time.count();
        if input.len() != nt {
            return Err(Error::DimensionMismatch {
                expected: nt,
                actual: input.len(),
            });
        }
        Ok(self
            .twiddles
            .chunks_exact(nt)
            .map(|row| row.iter().zip(input).map(|(w, v)| w * v).sum())
            .collect())
    }

    /// `out[j] = Σ_k e^{+iω_k t_j} input[k]`, the adjoint of [`Self::forward`].
    pub fn adjoint(&self, input: &[Complex64]) -> Result<Vec<Complex64>> {
        let nw = self.omega.count();
        let nt = self.time.count();
        if input.len() != nw {
            return Err(Error::DimensionMismatch {
                expected: nw,
                actual: input.len(),
            });
        }
        let mut out = vec![Complex64::new(0.0, 0.0); nt];
        for (row, c) in self.twiddles.chunks_exact(nt).zip(input) {
            for (o, w) in out.iter_mut().zip(row) {
                *o += w.conj() * c;
            }
        }
        Ok(out)
    }
}
