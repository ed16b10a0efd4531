//! Weyl-Heisenberg analysis on the cylinder ℤ×S¹: displacement operators on
//! circular signals, their matrix elements and truncated traces, von Mises
//! windows with their reproducing kernel, and the cylinder Gabor transform.
//!
//! Coefficients live on `{−M..M} × θ-axis` with measure `(1/2π) Σ_m dθ`.

mod transform;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::fourier::SpectralShifter;
use crate::numerics::{bessel_i, bessel_i_int, Grid1D};
use crate::Complex64;

pub use transform::{
    choose_truncation, cyl_energy, cyl_gabor_transform, cyl_reconstruct, CylCoefficients,
    TAIL_TOLERANCE,
};

/// Largest von Mises concentration accepted.
pub const MAX_CONCENTRATION: f64 = 50.0;

/// Complex samples on `γ_j = 2πj/N`, `0 <= j < N`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircularSignal {
    pub values: Vec<Complex64>,
}

impl CircularSignal {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "circular signal needs at least 2 samples, got {}",
                values.len()
            )));
        }
        Ok(Self { values })
    }

    pub fn from_fn(n: usize, f: impl Fn(f64) -> Complex64) -> Self {
        Self {
            values: (0..n).map(|j| f(2.0 * PI * j as f64 / n as f64)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn grid(&self) -> Grid1D {
        Grid1D::circle(self.len()).expect("at least two samples")
    }

    pub fn step(&self) -> f64 {
        2.0 * PI / self.len() as f64
    }

    /// `Δγ Σ |φ|²`.
    pub fn norm_sqr(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.step()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `Δγ Σ conj(self) · other`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum::<Complex64>()
            * self.step()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 0.0) {
            return Err(Error::Domain("cannot normalize a zero signal".into()));
        }
        Ok(Self {
            values: self.values.iter().map(|v| v / n).collect(),
        })
    }

    /// Fourier coefficients `c_m = (1/2π) ∫ e^{-imγ} φ(γ) dγ` in FFT order.
    pub fn fourier_coefficients(&self) -> Vec<Complex64> {
        let mut c = self.values.clone();
        FftPlanner::new().plan_fft_forward(c.len()).process(&mut c);
        let scale = 1.0 / self.len() as f64;
        c.iter_mut().for_each(|v| *v *= scale);
        c
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn relative_l2_error(&self, reference: &Self) -> f64 {
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

/// `D(m,θ)φ(γ) = e^{-imθ/2} e^{imγ} φ(γ−θ)`; the rotation is a spectral phase
/// ramp, exact for band-limited periodic signals.
pub fn displace_cyl(m: i64, theta: f64, phi: &CircularSignal) -> CircularSignal {
    let mut values = phi.values.clone();
    if m == 0 && theta == 0.0 {
        return CircularSignal { values };
    }
    let step = phi.step();
    SpectralShifter::new(values.len()).shift_in_place(&mut values, theta / step);
    if m != 0 {
        let mf = m as f64;
        for (j, v) in values.iter_mut().enumerate() {
            let gamma = j as f64 * step;
            *v *= Complex64::from_polar(1.0, mf * gamma - 0.5 * mf * theta);
        }
    }
    CircularSignal { values }
}

/// `⟨e_n|D(m,θ)|e_{n′}⟩` for `e_n = e^{inγ}/√(2π)`: `e^{i(m/2−n)θ}` when
/// `n − m = n′`, zero otherwise.
pub fn displacement_matrix_element(m: i64, theta: f64, n: i64, nprime: i64) -> Complex64 {
    if n - m == nprime {
        Complex64::from_polar(1.0, (0.5 * m as f64 - n as f64) * theta)
    } else {
        Complex64::new(0.0, 0.0)
    }
}

/// `Σ_{|n|≤N} ⟨e_n|D(m,θ)|e_n⟩`: zero for `m ≠ 0`, the Dirichlet kernel
/// `1 + 2 Σ_{n=1}^{N} cos(nθ)` for `m = 0`.
pub fn truncated_trace(m: i64, theta: f64, n_max: u32) -> Result<Complex64> {
    if n_max < 1 {
        return Err(Error::InvalidParameter("truncation order must be >= 1".into()));
    }
    if m != 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let sum: f64 = (1..=n_max).map(|n| (n as f64 * theta).cos()).sum();
    Ok(Complex64::new(1.0 + 2.0 * sum, 0.0))
}

fn check_concentration(lambda: f64) -> Result<()> {
    if !(0.0..=MAX_CONCENTRATION).contains(&lambda) {
        return Err(Error::InvalidParameter(format!(
            "von Mises concentration must lie in [0, {MAX_CONCENTRATION}], got {lambda}"
        )));
    }
    Ok(())
}

/// Von Mises window `e^{λ cos γ} / √(2π I₀(2λ))` on `n_gamma` points; unit
/// norm. `λ = 0` gives the constant `1/√(2π)`.
pub fn von_mises(lambda: f64, n_gamma: usize) -> Result<CircularSignal> {
    check_concentration(lambda)?;
    if n_gamma < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least 2 samples, got {n_gamma}"
        )));
    }
    let norm = (2.0 * PI * bessel_i(0, 2.0 * lambda)?).sqrt();
    Ok(CircularSignal::from_fn(n_gamma, |g| {
        Complex64::new((lambda * g.cos()).exp() / norm, 0.0)
    }))
}

/// Overlap `⟨ψ_{m,θ}|ψ_{m′,θ′}⟩` of displaced von Mises windows:
/// `e^{-i(mθ′−m′θ)/2} I_{m−m′}(2λ cos((θ−θ′)/2)) / I₀(2λ)`.
///
/// The half-angle cosine is taken on the unwrapped difference `θ − θ′`, which
/// can make its argument negative.
pub fn reproducing_kernel(
    lambda: f64,
    m: i64,
    theta: f64,
    mprime: i64,
    thetaprime: f64,
) -> Result<Complex64> {
    check_concentration(lambda)?;
    let phase = Complex64::from_polar(1.0, -0.5 * (m as f64 * thetaprime - mprime as f64 * theta));
    let arg = 2.0 * lambda * (0.5 * (theta - thetaprime)).cos();
    let modulus = bessel_i_int(m - mprime, arg)? / bessel_i(0, 2.0 * lambda)?;
    Ok(phase * modulus)
}

/// Closed-form reproducing kernel against quadrature of displaced windows.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelCheck {
    pub lambda: f64,
    pub samples: usize,
    pub max_error: f64,
    /// Whether the closed form returned exactly 1 at every coincident pair.
    pub coincident_exact: bool,
}

/// Compares [`reproducing_kernel`] with `⟨ψ_{m,θ}|ψ_{m′,θ′}⟩` computed on
/// `n_gamma` angle samples, at `samples` seeded random tuples with
/// `|m|, |m′| ≤ 8` and `θ, θ′ ∈ [0, 2π)`.
pub fn reproducing_kernel_check(lambda: f64, n_gamma: usize, samples: usize, seed: u64) -> Result<KernelCheck> {
    let psi = von_mises(lambda, n_gamma)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_error: f64 = 0.0;
    let mut coincident_exact = true;
    for _ in 0..samples {
        let (m, mp) = (rng.random_range(-8..=8), rng.random_range(-8..=8));
        let (t, tp) = (rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI));
        let quadrature = displace_cyl(m, t, &psi).inner(&displace_cyl(mp, tp, &psi));
        max_error = max_error.max((quadrature - reproducing_kernel(lambda, m, t, mp, tp)?).norm());
        coincident_exact &= reproducing_kernel(lambda, m, t, m, t)? == Complex64::new(1.0, 0.0);
    }
    Ok(KernelCheck {
        lambda,
        samples,
        max_error,
        coincident_exact,
    })
}

/// Largest frequency with non-negligible spectral content, used by
/// [`choose_truncation`].
pub(crate) fn bandwidth(phi: &CircularSignal, tol: f64) -> usize {
    let c = phi.fourier_coefficients();
    let n = c.len();
    let total: f64 = c.iter().map(|v| v.norm_sqr()).sum();
    if total == 0.0 {
        return 0;
    }
    // Energy at |m| > k, accumulated from the highest frequencies down.
    let energy_at = |k: usize| -> f64 {
        let mut e = c[k].norm_sqr();
        if k != 0 && n - k != k {
            e += c[n - k].norm_sqr();
        }
        e
    };
    let mut tail = 0.0;
    for k in (1..=n / 2).rev() {
        let next = tail + energy_at(k);
        if next > tol * total {
            return k;
        }
        tail = next;
    }
    0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::periodic_trapezoid;
    use proptest::prelude::*;
    use rand::Rng;

    fn basis(n: i64, size: usize) -> CircularSignal {
        CircularSignal::from_fn(size, |g| Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), n as f64 * g))
    }

    /// `⟨e_n|D(m,θ)|e_{n′}⟩` by trapezoid quadrature.
    fn element_by_quadrature(m: i64, theta: f64, n: i64, nprime: i64) -> Complex64 {
        let size = 128;
        let d = displace_cyl(m, theta, &basis(nprime, size));
        let e = basis(n, size);
        let prod: Vec<_> = e.values.iter().zip(&d.values).map(|(a, b)| a.conj() * b).collect();
        periodic_trapezoid(&prod)
    }

    #[test]
    fn matrix_element_examples() {
        let v = displacement_matrix_element(2, PI, 3, 1);
        assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert_eq!(displacement_matrix_element(2, 1.0, 3, 2), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn matrix_elements_match_quadrature() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let m = rng.random_range(-8..=8);
            let n = rng.random_range(-8..=8);
            let np = if rng.random_bool(0.5) { n - m } else { rng.random_range(-8..=8) };
            let theta = rng.random_range(0.0..2.0 * PI);
            let err = (element_by_quadrature(m, theta, n, np) - displacement_matrix_element(m, theta, n, np)).norm();
            assert!(err < 1e-12, "{m} {n} {np} {theta}: {err}");
        }
    }

    #[test]
    fn trace_values() {
        assert_eq!(truncated_trace(3, 0.7, 10).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(truncated_trace(0, 0.0, 10).unwrap().re, 21.0);
        let t: f64 = 0.9;
        let dirichlet = (10.5 * t).sin() / (0.5 * t).sin();
        assert!((truncated_trace(0, t, 10).unwrap().re - dirichlet).abs() < 1e-12);
        assert!(truncated_trace(0, t, 0).is_err());
    }

    #[test]
    fn von_mises_norm_and_peak() {
        let v = von_mises(1.0, 256).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-12);
        let peak = 1f64.exp() / (2.0 * PI * bessel_i(0, 2.0).unwrap()).sqrt();
        assert!((v.values[0].re - peak).abs() < 1e-15);
        let flat = von_mises(0.0, 64).unwrap();
        assert!((flat.values[5].re - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        assert!((flat.norm() - 1.0).abs() < 1e-14);
        assert!(von_mises(-1.0, 64).is_err());
        assert!(von_mises(51.0, 64).is_err());
    }

    #[test]
    fn kernel_identity_and_quadrature() {
        assert_eq!(reproducing_kernel(2.0, 3, 1.1, 3, 1.1).unwrap(), Complex64::new(1.0, 0.0));
        let lambda = 1.5;
        let psi = von_mises(lambda, 512).unwrap();
        let check = reproducing_kernel_check(lambda, 512, 20, 9).unwrap();
        assert!(check.max_error < 1e-10 && check.coincident_exact, "{check:?}");
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let (m, mp) = (rng.random_range(-6..=6), rng.random_range(-6..=6));
            let (t, tp) = (rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI));
            let a = displace_cyl(m, t, &psi);
            let b = displace_cyl(mp, tp, &psi);
            let err = (a.inner(&b) - reproducing_kernel(lambda, m, t, mp, tp).unwrap()).norm();
            assert!(err < 1e-10, "{err}");
        }
    }

    #[test]
    fn composition_and_conjugation() {
        let phi = von_mises(2.0, 256).unwrap();
        let (m, t, mp, tp) = (3, 0.8, -2, 2.3);
        let lhs = displace_cyl(m, t, &displace_cyl(mp, tp, &phi));
        let mut rhs = displace_cyl(m + mp, t + tp, &phi);
        let ph = Complex64::from_polar(1.0, 0.5 * (m as f64 * tp - mp as f64 * t));
        rhs.values.iter_mut().for_each(|v| *v *= ph);
        assert!(lhs.max_abs_diff(&rhs) < 1e-11);
        // D(m,θ) D(m′,θ′) D(m,θ)† = e^{i(mθ′−m′θ)} D(m′,θ′), with D(m,θ)† = D(−m,−θ).
        let conj = displace_cyl(m, t, &displace_cyl(mp, tp, &displace_cyl(-m, -t, &phi)));
        let mut expected = displace_cyl(mp, tp, &phi);
        let ph = Complex64::from_polar(1.0, m as f64 * tp - mp as f64 * t);
        expected.values.iter_mut().for_each(|v| *v *= ph);
        assert!(conj.max_abs_diff(&expected) < 1e-11);
    }

    proptest! {
        #[test]
        fn displacement_is_unitary(m in -10i64..=10, t in 0.0f64..(2.0 * PI)) {
            let phi = von_mises(3.0, 256).unwrap();
            prop_assert!((displace_cyl(m, t, &phi).norm() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn kernel_is_hermitian(m in -8i64..=8, t in -7.0f64..7.0, mp in -8i64..=8, tp in -7.0f64..7.0) {
            let a = reproducing_kernel(2.0, m, t, mp, tp).unwrap();
            let b = reproducing_kernel(2.0, mp, tp, m, t).unwrap();
            prop_assert_eq!(a, b.conj());
        }
    }
}
