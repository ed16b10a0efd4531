use std::f64::consts::PI;

use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::cylinder::{bandwidth, CircularSignal};
use crate::error::{Checked, Error, Result, Warning};
use crate::numerics::fourier::SpectralShifter;
use crate::numerics::Grid1D;
use crate::Complex64;

/// Relative spectral tail below which a frequency is considered empty.
pub const TAIL_TOLERANCE: f64 = 1e-12;
/// Relative energy on the outermost `|m| = M` rows above which reconstruction
/// reports the truncation as too tight.
pub const TRUNCATION_WARNING: f64 = 1e-10;

/// Coefficients `S(m,θ)` for `|m| <= M`, stored `(m + M)·N_θ + iθ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CylCoefficients {
    pub m_max: usize,
    pub theta_axis: Grid1D,
    #[serde(skip)]
    pub values: Vec<Complex64>,
}

impl CylCoefficients {
    pub fn index(&self, m: i64, i_theta: usize) -> usize {
        (m + self.m_max as i64) as usize * self.theta_axis.count() + i_theta
    }

    pub fn value(&self, m: i64, i_theta: usize) -> Complex64 {
        self.values[self.index(m, i_theta)]
    }

    pub fn orders(&self) -> std::ops::RangeInclusive<i64> {
        -(self.m_max as i64)..=self.m_max as i64
    }

    /// Energy carried by the rows `|m| = M`, relative to the total.
    pub fn edge_fraction(&self) -> f64 {
        let total = cyl_energy(self);
        if total == 0.0 {
            return 0.0;
        }
        let n = self.theta_axis.count();
        let row = |m: i64| -> f64 {
            (0..n).map(|i| self.value(m, i).norm_sqr()).sum::<f64>() * self.theta_axis.step() / (2.0 * PI)
        };
        let m = self.m_max as i64;
        (row(m) + if m != 0 { row(-m) } else { 0.0 }) / total
    }
}

/// `(1/2π) Σ_m Σ_θ Δθ |S(m,θ)|²`.
pub fn cyl_energy(s: &CylCoefficients) -> f64 {
    s.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * s.theta_axis.step() / (2.0 * PI)
}

fn check_theta_axis(theta_axis: &Grid1D) -> Result<()> {
    if (theta_axis.period() - 2.0 * PI).abs() > 1e-9 {
        return Err(Error::GridMismatch(format!(
            "the θ axis must cover one full turn, covers {}",
            theta_axis.period()
        )));
    }
    Ok(())
}

/// Smallest order `M` capturing the products `ψ̄(γ−θ) φ(γ)`: the sum of the
/// spectral bandwidths of `ψ` and `φ` at relative tail [`TAIL_TOLERANCE`].
pub fn choose_truncation(psi: &CircularSignal, phi: &CircularSignal) -> usize {
    let cap = psi.len().min(phi.len()).div_ceil(2) - 1;
    (bandwidth(psi, TAIL_TOLERANCE) + bandwidth(phi, TAIL_TOLERANCE)).min(cap)
}

/// `S(m,θ) = ⟨ψ_{m,θ}|φ⟩ = e^{imθ/2} Δγ Σ_j e^{-imγ_j} ψ̄(γ_j−θ) φ(γ_j)`.
///
/// One FFT of the windowed signal per θ node yields every order `m`.
pub fn cyl_gabor_transform(
    psi: &CircularSignal,
    phi: &CircularSignal,
    m_max: usize,
    theta_axis: &Grid1D,
) -> Result<CylCoefficients> {
    let n = psi.len();
    if phi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            actual: phi.len(),
        });
    }
    if 2 * m_max >= n {
        return Err(Error::InvalidParameter(format!(
            "truncation order {m_max} needs more than {} angle samples",
            2 * m_max
        )));
    }
    check_theta_axis(theta_axis)?;
    let shifter = SpectralShifter::new(n);
    let fft = FftPlanner::new().plan_fft_forward(n);
    let step = psi.step();
    let columns: Vec<Vec<Complex64>> = (0..theta_axis.count())
        .into_par_iter()
        .map(|i| {
            let theta = theta_axis.point(i);
            let mut w = psi.values.clone();
            shifter.shift_in_place(&mut w, theta / step);
            for (x, f) in w.iter_mut().zip(&phi.values) {
                *x = x.conj() * f;
            }
            fft.process(&mut w);
            (-(m_max as i64)..=m_max as i64)
                .map(|m| {
                    let bin = m.rem_euclid(n as i64) as usize;
                    w[bin] * step * Complex64::from_polar(1.0, 0.5 * m as f64 * theta)
                })
                .collect()
        })
        .collect();
    let n_theta = theta_axis.count();
    let mut values = vec![Complex64::new(0.0, 0.0); (2 * m_max + 1) * n_theta];
    for (i, col) in columns.iter().enumerate() {
        for (r, v) in col.iter().enumerate() {
            values[r * n_theta + i] = *v;
        }
    }
    Ok(CylCoefficients {
        m_max,
        theta_axis: *theta_axis,
        values,
    })
}

/// `φ(γ) = (1/2π) Σ_m Σ_θ Δθ S(m,θ) e^{-imθ/2} e^{imγ} ψ(γ−θ)`.
pub fn cyl_reconstruct(psi: &CircularSignal, s: &CylCoefficients) -> Result<Checked<CircularSignal>> {
    check_theta_axis(&s.theta_axis)?;
    let n = psi.len();
    if 2 * s.m_max >= n {
        return Err(Error::InvalidParameter(format!(
            "truncation order {} needs more than {} angle samples",
            s.m_max,
            2 * s.m_max
        )));
    }
    let shifter = SpectralShifter::new(n);
    let ifft = FftPlanner::new().plan_fft_inverse(n);
    let step = psi.step();
    let weight = s.theta_axis.step() / (2.0 * PI);
    let parts: Vec<Vec<Complex64>> = (0..s.theta_axis.count())
        .into_par_iter()
        .map(|i| {
            let theta = s.theta_axis.point(i);
            let mut spectrum = vec![Complex64::new(0.0, 0.0); n];
            for m in s.orders() {
                let bin = m.rem_euclid(n as i64) as usize;
                spectrum[bin] = s.value(m, i) * Complex64::from_polar(1.0, -0.5 * m as f64 * theta);
            }
            ifft.process(&mut spectrum);
            let mut w = psi.values.clone();
            shifter.shift_in_place(&mut w, theta / step);
            spectrum.iter().zip(&w).map(|(a, b)| a * b * weight).collect()
        })
        .collect();
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for part in &parts {
        for (acc, v) in values.iter_mut().zip(part) {
            *acc += v;
        }
    }
    let edge = s.edge_fraction();
    let warnings = if edge > TRUNCATION_WARNING {
        vec![Warning::new(
            "cyl_reconstruct",
            format!("{edge:.3e} of the coefficient energy sits at |m| = {}; raise the truncation order", s.m_max),
        )]
    } else {
        Vec::new()
    };
    Ok(Checked::with_warnings(CircularSignal::new(values)?, warnings))
}
