use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{Grid1D, PhaseSpaceGrid};
use crate::Complex64;

/// Highest Hermite degree (and highest number of zeros) handled.
pub const MAX_HERMITE_ORDER: usize = 30;

/// Allowed relative deficit of a diagonal Gram entry before the grid is
/// declared too small.
pub const GRAM_TAIL_TOLERANCE: f64 = 1e-6;

fn check_order(n: usize) -> Result<()> {
    if n > MAX_HERMITE_ORDER {
        return Err(Error::InvalidParameter(format!(
            "Hermite order {n} exceeds the cap {MAX_HERMITE_ORDER}"
        )));
    }
    Ok(())
}

pub(crate) fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!("s must lie in (0,1), got {s}")));
    }
    Ok(())
}

/// Physicists' Hermite polynomial at a complex point.
pub fn hermite_h(n: usize, z: Complex64) -> Result<Complex64> {
    check_order(n)?;
    Ok(hermite_upto(n, z)[n])
}

fn hermite_upto(n: usize, z: Complex64) -> Vec<Complex64> {
    let mut h = Vec::with_capacity(n + 1);
    h.push(Complex64::new(1.0, 0.0));
    if n >= 1 {
        h.push(2.0 * z);
    }
    for k in 1..n {
        let next = 2.0 * z * h[k] - 2.0 * k as f64 * h[k - 1];
        h.push(next);
    }
    h
}

/// Monomial coefficients of `H_0 … H_n`, lowest degree first.
pub(crate) fn hermite_coefficients(n: usize) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = vec![vec![1.0]];
    if n >= 1 {
        out.push(vec![0.0, 2.0]);
    }
    for k in 1..n {
        let mut next = vec![0.0; k + 2];
        for (i, c) in out[k].iter().enumerate() {
            next[i + 1] += 2.0 * c;
        }
        for (i, c) in out[k - 1].iter().enumerate() {
            next[i] -= 2.0 * k as f64 * c;
        }
        out.push(next);
    }
    out
}

/// `(π√s/(1−s)) (2(1+s)/(1−s))^n n!`, the squared norm of `H_n(b+iω)` under
/// the weight `e^{−(1−s)b² − (1/s−1)ω²} db dω`.
pub fn hermite_norm(n: usize, s: f64) -> Result<f64> {
    check_order(n)?;
    check_s(s)?;
    let ratio = 2.0 * (1.0 + s) / (1.0 - s);
    let mut v = PI * s.sqrt() / (1.0 - s);
    for k in 1..=n {
        v *= ratio * k as f64;
    }
    Ok(v)
}

/// The pair of Gaussian rates `(1−s, 1/s−1)` along `b` and `ω`.
pub fn gaussian_rates(s: f64) -> Result<(f64, f64)> {
    check_s(s)?;
    Ok((1.0 - s, 1.0 / s - 1.0))
}

fn axis_for(rate: f64, degree: usize) -> Result<Grid1D> {
    let scale = rate.sqrt();
    let half = ((2 * degree + 1) as f64).sqrt() + 7.0;
    let count = 2 * (16.0 * half).ceil() as usize + 1;
    Grid1D::symmetric(half / scale, count)
}

/// Quadrature lattice wide enough for `H_m conj(H_n)` under the weight at `s`.
pub fn hermite_grid(m: usize, n: usize, s: f64) -> Result<PhaseSpaceGrid> {
    let (rb, rw) = gaussian_rates(s)?;
    let degree = m.max(n);
    Ok(PhaseSpaceGrid::new(axis_for(rw, degree)?, axis_for(rb, degree)?))
}

fn weighted_sum(
    m: usize,
    n: usize,
    s: f64,
    grid: &PhaseSpaceGrid,
) -> (Complex64, f64, f64) {
    let (rb, rw) = (1.0 - s, 1.0 / s - 1.0);
    let degree = m.max(n);
    let mut cross = Complex64::new(0.0, 0.0);
    let (mut mm, mut nn) = (0.0, 0.0);
    for i in 0..grid.omega.count() {
        let w = grid.omega.point(i);
        for j in 0..grid.b.count() {
            let b = grid.b.point(j);
            let g = (-rb * b * b - rw * w * w).exp();
            if g == 0.0 {
                continue;
            }
            let h = hermite_upto(degree, Complex64::new(b, w));
            cross += h[m] * h[n].conj() * g;
            mm += h[m].norm_sqr() * g;
            nn += h[n].norm_sqr() * g;
        }
    }
    let area = grid.omega.step() * grid.b.step();
    (cross * area, mm * area, nn * area)
}

/// `∫∫ H_m(b+iω) conj(H_n(b+iω)) e^{−(1−s)b² − (1/s−1)ω²} db dω` by the
/// rectangle rule on `grid`.
///
/// Fails with [`Error::MassLeakage`] when either diagonal entry falls short
/// of its closed form by more than [`GRAM_TAIL_TOLERANCE`] relative.
pub fn hermite_gram(m: usize, n: usize, s: f64, grid: &PhaseSpaceGrid) -> Result<Complex64> {
    check_order(m.max(n))?;
    check_s(s)?;
    let (cross, mm, nn) = weighted_sum(m, n, s, grid);
    for (k, got) in [(m, mm), (n, nn)] {
        let tail = 1.0 - got / hermite_norm(k, s)?;
        if tail > GRAM_TAIL_TOLERANCE {
            return Err(Error::MassLeakage { tail });
        }
    }
    Ok(cross)
}

/// Gram matrix for degrees `0..=max_degree` on one lattice.
pub fn hermite_gram_matrix(max_degree: usize, s: f64) -> Result<Vec<Vec<Complex64>>> {
    let grid = hermite_grid(max_degree, max_degree, s)?;
    (0..=max_degree)
        .map(|m| (0..=max_degree).map(|n| hermite_gram(m, n, s, &grid)).collect())
        .collect()
}
