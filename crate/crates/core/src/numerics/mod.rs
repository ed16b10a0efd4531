//! Shared numerical kernel: grids, special functions, quadrature, spectral
//! shifts, phase-space convolution and minima detection.

mod bessel;
pub mod fourier;
pub(crate) mod grid;
mod minima;
mod quadrature;

mod convolve;

pub use bessel::{bessel_i, bessel_i_int, MAX_BESSEL_ARG, MAX_BESSEL_ORDER};
pub use convolve::grid_convolve;
pub use fourier::{fractional_shift, SpectralShifter, UniformDft};
pub use grid::{ComplexGrid, Distribution, Grid1D, PhaseSpaceGrid, SampledSignal};
pub use minima::{find_local_minima, LocalMinimum, MINIMUM_NOISE_FLOOR};
pub use quadrature::periodic_trapezoid;

/// Relative magnitude above which samples at the edge of a grid count as
/// leaking across the periodic boundary.
pub const EDGE_TOLERANCE: f64 = 1e-10;
