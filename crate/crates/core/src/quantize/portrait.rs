use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Checked, Error, Result, Warning};
use crate::gabor::gaussian_signal;
use crate::numerics::fourier::{edge_warnings, SpectralShifter, UniformDft};
use crate::numerics::{grid_convolve, Distribution, Grid1D, PhaseSpaceGrid, SampledSignal};
use crate::quantize::kernel::check_normalized;
use crate::Complex64;

/// Mass of `P^{ar}` that must fall inside the lattice for a portrait.
pub const KERNEL_COVERAGE: f64 = 1e-8;

/// Gaussian probe `ψ(τ) = (πw)^{-1/4} e^{-τ²/(2w)}` of width `w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianProbe {
    pub width: f64,
}

impl GaussianProbe {
    pub fn new(width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "probe width must be positive, got {width}"
            )));
        }
        Ok(Self { width })
    }

    pub fn sample(&self, grid: Grid1D) -> Checked<SampledSignal> {
        let s = gaussian_signal(self.width, 0.0, grid).expect("validated width");
        let warnings = edge_warnings("gaussian_probe_signal", &s);
        Checked::with_warnings(s, warnings)
    }
}

/// Samples the unit-norm Gaussian probe of the given width.
pub fn gaussian_probe_signal(width: f64, grid: Grid1D) -> Result<Checked<SampledSignal>> {
    Ok(GaussianProbe::new(width)?.sample(grid))
}

/// `P^{ar}(ω,b) = (2√(ra)/(r+a)) e^{-(ra/(r+a))ω²} e^{-b²/(r+a)}`, the overlap
/// density of Gaussian probes of widths `a` and `r`; unit mass under
/// `dω db / 2π`.
pub fn par_kernel_value(a: f64, r: f64, omega: f64, b: f64) -> f64 {
    let s = r + a;
    2.0 * (r * a).sqrt() / s * (-(r * a / s) * omega * omega - b * b / s).exp()
}

/// [`par_kernel_value`] on every lattice node.
pub fn par_kernel_closed(a: f64, r: f64, grid: &PhaseSpaceGrid) -> Result<Distribution> {
    GaussianProbe::new(a)?;
    GaussianProbe::new(r)?;
    Distribution::from_fn(*grid, |w, b| par_kernel_value(a, r, w, b))
}

/// `|∫ e^{-iωτ} ψ̄_r(τ) ψ_a(τ+b) dτ|²` by the rectangle rule on the probes'
/// common time grid.
pub fn par_kernel_quadrature(
    psi_a: &SampledSignal,
    psi_r: &SampledSignal,
    omega: f64,
    b: f64,
) -> Result<Checked<f64>> {
    crate::gabor::same_grid(&psi_a.grid, &psi_r.grid)?;
    let grid = psi_a.grid;
    let mut moved = psi_a.values.clone();
    SpectralShifter::new(grid.count()).shift_in_place(&mut moved, -b / grid.step());
    let sum: Complex64 = moved
        .iter()
        .zip(&psi_r.values)
        .enumerate()
        .map(|(j, (pa, pr))| Complex64::from_polar(1.0, -omega * grid.point(j)) * pr.conj() * pa)
        .sum::<Complex64>()
        * grid.step();
    let mut warnings = edge_warnings("par_kernel_quadrature", psi_a);
    warnings.extend(edge_warnings("par_kernel_quadrature", psi_r));
    Ok(Checked::with_warnings(sum.norm_sqr(), warnings))
}

/// [`par_kernel_quadrature`] on every lattice node, one discrete Fourier sum
/// per `b`.
pub fn par_kernel_quadrature_grid(
    psi_a: &SampledSignal,
    psi_r: &SampledSignal,
    grid: &PhaseSpaceGrid,
) -> Result<Checked<Vec<f64>>> {
    crate::gabor::same_grid(&psi_a.grid, &psi_r.grid)?;
    let time = psi_a.grid;
    let dft = UniformDft::new(grid.omega, time);
    let shifter = SpectralShifter::new(time.count());
    let dt = time.step();
    let columns: Vec<Vec<Complex64>> = (0..grid.b.count())
        .into_par_iter()
        .map(|l| {
            let mut moved = psi_a.values.clone();
            shifter.shift_in_place(&mut moved, -grid.b.point(l) / dt);
            let prod: Vec<Complex64> = moved
                .iter()
                .zip(&psi_r.values)
                .map(|(pa, pr)| pr.conj() * pa * dt)
                .collect();
            dft.forward(&prod).expect("matching length")
        })
        .collect();
    let mut out = vec![0.0; grid.len()];
    for (l, col) in columns.iter().enumerate() {
        for (k, v) in col.iter().enumerate() {
            out[grid.index(k, l)] = v.norm_sqr();
        }
    }
    let mut warnings = edge_warnings("par_kernel_quadrature", psi_a);
    warnings.extend(edge_warnings("par_kernel_quadrature", psi_r));
    Ok(Checked::with_warnings(out, warnings))
}

/// Semi-classical portrait `w ∗ P^{ar}` of a normalized distribution.
pub fn portrait(w: &Distribution, a: f64, r: f64) -> Result<Checked<Distribution>> {
    check_normalized(w)?;
    let kernel = par_kernel_closed(a, r, w.grid())?;
    let mut warnings = Vec::new();
    let inside = kernel.mass();
    if inside < 1.0 - KERNEL_COVERAGE {
        warnings.push(Warning::new(
            "portrait",
            format!("only {inside:.10} of the probe kernel mass lies on the lattice"),
        ));
    }
    let out = grid_convolve(w, &kernel)?.collect_into(&mut warnings);
    Ok(Checked::with_warnings(out, warnings))
}

/// Normalized Gaussian distribution with per-axis variances, centred at
/// `(omega0, b0)`: `(1/√(v_ω v_b)) e^{-(ω−ω₀)²/(2v_ω) − (b−b₀)²/(2v_b)}`.
pub fn gaussian_weight(
    grid: &PhaseSpaceGrid,
    var_omega: f64,
    var_b: f64,
    omega0: f64,
    b0: f64,
) -> Result<Distribution> {
    if !(var_omega > 0.0 && var_b > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "variances must be positive, got ({var_omega}, {var_b})"
        )));
    }
    let c = 1.0 / (var_omega * var_b).sqrt();
    Distribution::from_fn(*grid, |w, b| {
        c * (-(w - omega0).powi(2) / (2.0 * var_omega) - (b - b0).powi(2) / (2.0 * var_b)).exp()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gabor::default_time_grid;

    fn lattice(half: f64, n: usize) -> PhaseSpaceGrid {
        let g = Grid1D::spanning(-half, half, n).unwrap();
        PhaseSpaceGrid::new(g, g)
    }

    #[test]
    fn probes_are_unit_norm() {
        for w in [1.0, 5.0, 0.2] {
            let s = gaussian_probe_signal(w, default_time_grid()).unwrap();
            assert!(s.is_clean());
            assert!((s.value.norm() - 1.0).abs() < 1e-12);
        }
        assert!(gaussian_probe_signal(0.0, default_time_grid()).is_err());
        assert!(gaussian_probe_signal(-1.0, default_time_grid()).is_err());
    }

    #[test]
    fn closed_form_rates_and_mass() {
        let v = par_kernel_value(1.0, 1.0, 0.7, -0.4);
        assert!((v - (-(0.49 + 0.16) / 2.0f64).exp()).abs() < 1e-15);
        for (a, r) in [(1.0, 1.0), (5.0, 0.2), (2.0, 2.0), (5.0, 10.0)] {
            let p = par_kernel_closed(a, r, &lattice(24.0, 384)).unwrap();
            assert!((p.mass() - 1.0).abs() < 1e-8, "({a},{r}) {}", p.mass());
        }
        let s: f64 = 5.2;
        let lhs = (par_kernel_value(5.0, 0.2, 1.0, 0.0) / par_kernel_value(5.0, 0.2, 0.0, 0.0)).ln();
        assert!((lhs + 1.0 / s).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        let t = default_time_grid();
        let grid = lattice(4.0, 33);
        for (a, r) in [(1.0, 1.0), (5.0, 0.2), (2.0, 2.0), (5.0, 10.0)] {
            let pa = gaussian_probe_signal(a, t).unwrap().value;
            let pr = gaussian_probe_signal(r, t).unwrap().value;
            let q = par_kernel_quadrature_grid(&pa, &pr, &grid).unwrap().value;
            let c = par_kernel_closed(a, r, &grid).unwrap();
            let err = q.iter().zip(c.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            assert!(err < 1e-8, "({a},{r}) {err}");
            let single = par_kernel_quadrature(&pa, &pr, 1.25, -0.5).unwrap().value;
            assert!((single - par_kernel_value(a, r, 1.25, -0.5)).abs() < 1e-8);
        }
    }

    #[test]
    fn quadrature_trivial_points() {
        let t = default_time_grid();
        let p = gaussian_probe_signal(1.0, t).unwrap().value;
        assert!((par_kernel_quadrature(&p, &p, 0.0, 0.0).unwrap().value - 1.0).abs() < 1e-12);
        assert!(par_kernel_quadrature(&p, &p, 12.0, 9.0).unwrap().value < 1e-12);
    }

    #[test]
    fn portrait_adds_kernel_variances() {
        let grid = lattice(16.0, 256);
        let (vw, vb) = (0.8, 1.3);
        let (a, r) = (2.0, 0.5);
        let w = gaussian_weight(&grid, vw, vb, 0.0, 0.0).unwrap();
        let out = portrait(&w, a, r).unwrap();
        assert!(out.is_clean());
        let expected = gaussian_weight(&grid, vw + (r + a) / (2.0 * r * a), vb + (r + a) / 2.0, 0.0, 0.0).unwrap();
        let err = out.value.values().iter().zip(expected.values()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
        assert!(err < 1e-6, "{err}");
        assert!((out.value.mass() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn portrait_refuses_unnormalized_input() {
        let grid = lattice(8.0, 64);
        let w = Distribution::from_fn(grid, |_, _| 1.0).unwrap();
        assert!(portrait(&w, 1.0, 1.0).is_err());
    }
}
