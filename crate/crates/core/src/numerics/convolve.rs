use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::error::{Checked, Error, Result, Warning};
use crate::numerics::grid::Distribution;
use crate::numerics::EDGE_TOLERANCE;

/// Phase-space convolution `h(x) = ∫ f(x′) g(x − x′) dω′db′/2π` on the grid
/// shared by `f` and `g`.
///
/// Computed as a zero-padded (linear, not circular) 2D FFT convolution scaled
/// by the cell measure. `g` is indexed relative to the grid origin, which must
/// therefore be a grid node on both axes. Tiny negative round-off is clipped
/// to zero.
pub fn grid_convolve(f: &Distribution, g: &Distribution) -> Result<Checked<Distribution>> {
    let grid = *f.grid();
    if grid != *g.grid() {
        return Err(Error::GridMismatch(
            "grid_convolve needs both distributions on the same grid".into(),
        ));
    }
    let (ow, ob) = match (grid.omega.origin_index(), grid.b.origin_index()) {
        (Some(ow), Some(ob)) => (ow, ob),
        _ => {
            return Err(Error::GridMismatch(
                "grid_convolve needs the origin (0, 0) to be a grid node".into(),
            ))
        }
    };
    let (nw, nb) = (grid.omega.count(), grid.b.count());
    let (pw, pb) = ((2 * nw - 1).next_power_of_two(), (2 * nb - 1).next_power_of_two());

    let mut fa = padded(f, pw, pb);
    let mut ga = padded(g, pw, pb);
    fft2(&mut fa, pw, pb, false);
    fft2(&mut ga, pw, pb, false);
    for (x, y) in fa.iter_mut().zip(&ga) {
        *x *= y;
    }
    fft2(&mut fa, pw, pb, true);

    let scale = grid.cell_measure() / (pw * pb) as f64;
    let mut values = Vec::with_capacity(grid.len());
    for i in 0..nw {
        let row = (i + ow) * pb;
        for j in 0..nb {
            values.push((fa[row + j + ob].re * scale).max(0.0));
        }
    }
    let out = Distribution::new(grid, values)?;

    let mut warnings = Vec::new();
    for (name, d) in [("first", f), ("second", g)] {
        let ratio = d.boundary_ratio();
        if ratio > EDGE_TOLERANCE {
            warnings.push(Warning::new(
                "grid_convolve",
                format!("{name} operand reaches {ratio:.3e} of its maximum on the grid boundary; mass outside the grid is lost"),
            ));
        }
    }
    Ok(Checked::with_warnings(out, warnings))
}

fn padded(d: &Distribution, pw: usize, pb: usize) -> Vec<Complex64> {
    let nb = d.grid().b.count();
    let mut out = vec![Complex64::new(0.0, 0.0); pw * pb];
    for (i, row) in d.values().chunks_exact(nb).enumerate() {
        for (j, &v) in row.iter().enumerate() {
            out[i * pb + j] = Complex64::new(v, 0.0);
        }
    }
    out
}

/// Unnormalized in-place 2D FFT of a row-major `rows × cols` array.
pub(crate) fn fft2(data: &mut [Complex64], rows: usize, cols: usize, inverse: bool) {
    let mut planner = FftPlanner::new();
    let (row_fft, col_fft) = if inverse {
        (planner.plan_fft_inverse(cols), planner.plan_fft_inverse(rows))
    } else {
        (planner.plan_fft_forward(cols), planner.plan_fft_forward(rows))
    };
    data.par_chunks_exact_mut(cols)
        .for_each(|row| row_fft.process(row));
    let mut transposed = transpose(data, rows, cols);
    transposed
        .par_chunks_exact_mut(rows)
        .for_each(|col| col_fft.process(col));
    data.copy_from_slice(&transpose(&transposed, cols, rows));
}

fn transpose(data: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); rows * cols];
    for i in 0..rows {
        for j in 0..cols {
            out[j * rows + i] = data[i * cols + j];
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Grid1D, PhaseSpaceGrid};
    use std::f64::consts::PI;

    fn grid(n: usize, half: f64) -> PhaseSpaceGrid {
        let g = Grid1D::spanning(-half, half, n).unwrap();
        PhaseSpaceGrid::new(g, g)
    }

    /// Gaussian with per-axis variances and unit mass under dω db / 2π.
    fn gaussian(grid: PhaseSpaceGrid, vw: f64, vb: f64, cw: f64, cb: f64) -> Distribution {
        Distribution::from_fn(grid, |w, b| {
            2.0 * PI / (2.0 * PI * (vw * vb).sqrt())
                * (-(w - cw).powi(2) / (2.0 * vw) - (b - cb).powi(2) / (2.0 * vb)).exp()
        })
        .unwrap()
    }

    #[test]
    fn variances_add() {
        let g = grid(128, 16.0);
        let f = gaussian(g, 1.0, 0.5, 0.0, 0.0);
        let h = gaussian(g, 0.7, 2.0, 0.0, 0.0);
        let out = grid_convolve(&f, &h).unwrap();
        assert!(out.is_clean());
        let expected = gaussian(g, 1.7, 2.5, 0.0, 0.0);
        let err = out
            .value
            .values()
            .iter()
            .zip(expected.values())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-8, "{err}");
    }

    #[test]
    fn delta_recenters() {
        let gr = grid(64, 8.0);
        let h = gaussian(gr, 1.0, 1.0, 0.0, 0.0);
        let (iw, ib) = (40, 28);
        let mut vals = vec![0.0; gr.len()];
        vals[gr.index(iw, ib)] = 1.0 / gr.cell_measure();
        let delta = Distribution::new(gr, vals).unwrap();
        let out = grid_convolve(&delta, &h).unwrap().value;
        let (cw, cb) = gr.node(iw, ib);
        let expected = gaussian(gr, 1.0, 1.0, cw, cb);
        let max = expected.max();
        for (a, b) in out.values().iter().zip(expected.values()) {
            assert!((a - b).abs() < 1e-6 * max);
        }
    }

    #[test]
    fn mass_multiplies_and_commutes() {
        let g = grid(96, 12.0);
        let f = gaussian(g, 1.0, 0.5, 1.0, -0.5);
        let h = gaussian(g, 0.3, 2.0, -0.5, 1.0);
        let fh = grid_convolve(&f, &h).unwrap().value;
        let hf = grid_convolve(&h, &f).unwrap().value;
        assert!((fh.mass() - f.mass() * h.mass()).abs() < 1e-10);
        for (a, b) in fh.values().iter().zip(hf.values()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_mismatched_or_offset_grids() {
        let a = gaussian(grid(32, 8.0), 1.0, 1.0, 0.0, 0.0);
        let b = gaussian(grid(64, 8.0), 1.0, 1.0, 0.0, 0.0);
        assert!(grid_convolve(&a, &b).is_err());
        let off = Grid1D::new(-7.9, 0.5, 32).unwrap();
        let og = PhaseSpaceGrid::new(off, off);
        let c = gaussian(og, 1.0, 1.0, 0.0, 0.0);
        assert!(grid_convolve(&c, &c).is_err());
    }

    #[test]
    fn boundary_leakage_warns() {
        let g = grid(32, 2.0);
        let f = gaussian(g, 1.0, 1.0, 0.0, 0.0);
        assert!(!grid_convolve(&f, &f).unwrap().is_clean());
    }
}
