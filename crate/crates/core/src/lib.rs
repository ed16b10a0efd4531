//! Weyl-Heisenberg symmetry in numbers.
//!
//! The crate covers the Heisenberg group family and its matrix embeddings
//! ([`groups`]), Gabor analysis on the real line ([`gabor`]) and on the
//! semi-discrete cylinder ℤ×S¹ ([`cylinder`]), covariant integral quantization of
//! phase-space distributions together with their semi-classical portraits
//! ([`quantize`]), and the planar stellar-constellation experiment ([`stellar`]).
//! Everything numerical is built on the shared kernel in [`numerics`].
//!
//! Phase space carries the measure `dω db / 2π` throughout.

pub mod cylinder;
pub mod error;
pub mod gabor;
pub mod groups;
pub mod numerics;
pub mod quantize;
pub mod stellar;

pub use error::{Checked, Error, Result, Warning};
pub use num_complex::Complex64;
