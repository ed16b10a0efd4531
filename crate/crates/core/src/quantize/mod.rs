//! Covariant integral quantization of phase-space distributions with respect
//! to displacement operators, and the semi-classical portraits obtained by
//! smoothing a distribution with the probe kernel `P^{ar}`.
//!
//! A distribution `w(ω,b)` with unit mass under `dω db / 2π` is sent to the
//! density operator `ρ_w = ∫ w(ω,b) |ψ_{ω,b}⟩⟨ψ_{ω,b}| dω db / 2π`. Operators are
//! stored as kernels on a time grid with the convention
//! `(K s)(t_i) = Δt Σ_j K(t_i, t_j) s(t_j)`.

mod kernel;
mod portrait;

pub use kernel::{
    density_diagnostics, quantize_to_kernel, weyl_operator_from_weight, DensityReport,
    OperatorKernel, MASS_TOLERANCE,
};
pub use portrait::{
    gaussian_probe_signal, gaussian_weight, par_kernel_closed, par_kernel_quadrature,
    par_kernel_quadrature_grid, par_kernel_value, portrait, GaussianProbe,
};
