use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Checked, Error, Result, Warning};
use crate::gabor::{displace, same_grid, Probe, TFCoefficients};
use crate::numerics::fourier::{edge_warnings, SpectralShifter, UniformDft};
use crate::numerics::{Grid1D, PhaseSpaceGrid, SampledSignal};
use crate::Complex64;

/// Relative energy deficit of a reconstruction above which coverage of the
/// time-frequency support is reported as insufficient.
pub const RECONSTRUCTION_DEFICIT: f64 = 0.01;

/// Probe translated to every `b` node, `ψ(t − b_l)`, one vector per node.
fn translated_probes(probe: &Probe, b_axis: &Grid1D) -> Vec<Vec<Complex64>> {
    let psi = probe.signal();
    let shifter = SpectralShifter::new(psi.grid.count());
    let step = psi.grid.step();
    (0..b_axis.count())
        .into_par_iter()
        .map(|l| {
            let mut v = psi.values.clone();
            shifter.shift_in_place(&mut v, b_axis.point(l) / step);
            v
        })
        .collect()
}

/// `S(ω,b) = Δt Σ_j e^{-iωt_j} ψ̄(t_j − b) s(t_j)` at every lattice node.
///
/// For each `b` the ω-slice is one discrete Fourier sum of the windowed
/// signal.
pub fn gabor_transform(
    probe: &Probe,
    s: &SampledSignal,
    grid: &PhaseSpaceGrid,
) -> Result<Checked<TFCoefficients>> {
    same_grid(&probe.grid(), &s.grid)?;
    let time = s.grid;
    let dft = UniformDft::new(grid.omega, time);
    let shifted = translated_probes(probe, &grid.b);
    let dt = time.step();
    let columns: Vec<Vec<Complex64>> = shifted
        .par_iter()
        .map(|psi_b| {
            let windowed: Vec<Complex64> = psi_b
                .iter()
                .zip(&s.values)
                .map(|(p, v)| p.conj() * v * dt)
                .collect();
            dft.forward(&windowed).expect("matching length")
        })
        .collect();
    let mut out = TFCoefficients::zeros(*grid, probe.id());
    for (l, col) in columns.iter().enumerate() {
        for (k, v) in col.iter().enumerate() {
            out.values[grid.index(k, l)] = *v;
        }
    }
    let mut warnings = edge_warnings("gabor_transform", s);
    warnings.extend(edge_warnings("gabor_transform", probe.signal()));
    Ok(Checked::with_warnings(out, warnings))
}

/// `s(t) = Σ S(ω,b) e^{iωt} ψ(t − b) Δω Δb / 2π` on the probe's time grid.
///
/// Warns when the reconstructed energy falls short of the coefficient energy
/// by more than one percent.
pub fn gabor_reconstruct(probe: &Probe, coeffs: &TFCoefficients) -> Result<Checked<SampledSignal>> {
    if coeffs.probe != probe.id() {
        return Err(Error::InvalidParameter(format!(
            "coefficients were computed with probe {} but reconstruction uses {}",
            coeffs.probe,
            probe.id()
        )));
    }
    let grid = coeffs.grid;
    let time = probe.grid();
    let dft = UniformDft::new(grid.omega, time);
    let shifted = translated_probes(probe, &grid.b);
    let cell = grid.cell_measure();
    let n_omega = grid.omega.count();
    let parts: Vec<Vec<Complex64>> = shifted
        .par_iter()
        .enumerate()
        .map(|(l, psi_b)| {
            let column: Vec<Complex64> = (0..n_omega).map(|k| coeffs.value(k, l)).collect();
            let wave = dft.adjoint(&column).expect("matching length");
            wave.iter().zip(psi_b).map(|(w, p)| w * p * cell).collect()
        })
        .collect();
    let mut values = vec![Complex64::new(0.0, 0.0); time.count()];
    for part in &parts {
        for (acc, v) in values.iter_mut().zip(part) {
            *acc += v;
        }
    }
    let out = SampledSignal::new(time, values)?;
    let mut warnings = Vec::new();
    let target = coeffs.energy();
    if target > 0.0 {
        let deficit = (target - out.norm_sqr()) / target;
        if deficit > RECONSTRUCTION_DEFICIT {
            warnings.push(Warning::new(
                "gabor_reconstruct",
                format!("reconstructed energy is {:.2}% below the coefficient energy; the lattice may not cover the signal's time-frequency support", 100.0 * deficit),
            ));
        }
    }
    Ok(Checked::with_warnings(out, warnings))
}

/// Phase relating the transform of a displaced signal to the translated
/// transform: `S[D(ω₀,b₀)s](ω,b) = e^{-i(ω−ω₀/2)b₀} S[s](ω−ω₀, b−b₀)`.
pub fn covariance_phase(omega: f64, omega0: f64, b0: f64) -> Complex64 {
    Complex64::from_polar(1.0, -(omega - 0.5 * omega0) * b0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CovarianceReport {
    /// `max |S[D(ω₀,b₀)s] − phase · S[s](· − ω₀, · − b₀)|` over the lattice.
    pub residual: f64,
    /// `max |S[D(ω₀,b₀)s]|`, the scale for the residual.
    pub max_abs: f64,
}

impl CovarianceReport {
    pub fn relative(&self) -> f64 {
        if self.max_abs == 0.0 {
            self.residual
        } else {
            self.residual / self.max_abs
        }
    }
}

/// Measures the covariance of the Gabor transform under displacements.
///
/// The translated transform is evaluated exactly by transforming on the
/// lattice shifted by `(−ω₀, −b₀)`.
pub fn covariance_residual(
    probe: &Probe,
    s: &SampledSignal,
    omega0: f64,
    b0: f64,
    grid: &PhaseSpaceGrid,
) -> Result<Checked<CovarianceReport>> {
    let mut warnings = Vec::new();
    let moved = displace(omega0, b0, s).collect_into(&mut warnings);
    let lhs = gabor_transform(probe, &moved, grid)?.collect_into(&mut warnings);
    let back = PhaseSpaceGrid::new(grid.omega.shifted(-omega0), grid.b.shifted(-b0));
    let rhs = gabor_transform(probe, s, &back)?.collect_into(&mut warnings);
    let mut residual = 0.0f64;
    for k in 0..grid.omega.count() {
        let phase = covariance_phase(grid.omega.point(k), omega0, b0);
        for l in 0..grid.b.count() {
            residual = residual.max((lhs.value(k, l) - phase * rhs.value(k, l)).norm());
        }
    }
    warnings.dedup();
    Ok(Checked::with_warnings(
        CovarianceReport {
            residual,
            max_abs: lhs.max_abs(),
        },
        warnings,
    ))
}
