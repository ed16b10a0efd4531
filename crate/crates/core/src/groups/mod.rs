//! Heisenberg-type groups: the three-dimensional group over ℝ, ℤ and ℤ/pℤ,
//! the polarized group on `ℝⁿ × ℝⁿ × ℝ`, the Heisenberg group of a symplectic
//! space, and the generalized group inside the 4×4 unit upper triangular
//! matrices. Every real law ships with its matrix embedding so it can be
//! checked against matrix multiplication.

mod check;
mod gwh3;
mod heisenberg;
mod matrix;
mod polarized;
mod ring;
mod symplectic;

pub use check::{group_check, GroupCheckReport, SuiteResult, GROUP_CHECK_SAMPLES, MATRIX_TOLERANCE};
pub use gwh3::{corner_cocycle, gwh3_compose, gwh3_to_matrix, second_level_cocycle, GWH3Element};
pub use heisenberg::{ring_matmul3, wh_compose, wh_to_matrix, zmod_group_elements, WHElement};
pub use matrix::{
    commutator_table, level, nilpotency_filtration_check, product_table, strictly_upper_basis,
    subdiag_embed, unit_commutator, unit_product, FiltrationReport, InclusionCheck, MatrixUnit,
    UnitCombination, UnitUpperMatrix,
};
pub use polarized::{phn_compose, PolarizedElement};
pub use ring::{HeisenbergRing, PolarizedRing, ZMod};
pub use symplectic::{symplectic_compose, symplectic_form, SymplecticWHElement};
