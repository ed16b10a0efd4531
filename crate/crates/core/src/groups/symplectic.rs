use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::heisenberg::WHElement;
use crate::groups::matrix::UnitUpperMatrix;

/// Element `(c, v)` of the Heisenberg group of the standard symplectic space
/// `ℝ²ⁿ`, with `v = (a₁..aₙ, b₁..bₙ)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymplecticWHElement {
    pub c: f64,
    pub v: Vec<f64>,
}

/// Standard skew form `ω((a,b),(a′,b′)) = Σ aᵢb′ᵢ − bᵢa′ᵢ`.
pub fn symplectic_form(v: &[f64], w: &[f64]) -> Result<f64> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            actual: w.len(),
        });
    }
    if v.len() % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "symplectic vectors need even dimension, got {}",
            v.len()
        )));
    }
    let n = v.len() / 2;
    Ok((0..n).map(|i| v[i] * w[n + i] - v[n + i] * w[i]).sum())
}

impl SymplecticWHElement {
    pub fn new(c: f64, v: Vec<f64>) -> Result<Self> {
        if v.is_empty() || v.len() % 2 != 0 {
            return Err(Error::InvalidParameter(format!(
                "symplectic vectors need positive even dimension, got {}",
                v.len()
            )));
        }
        Ok(Self { c, v })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            c: 0.0,
            v: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// `(c + c′ + ½ω(v, v′), v + v′)`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let w = symplectic_form(&self.v, &other.v)?;
        Ok(Self {
            c: self.c + other.c + 0.5 * w,
            v: self.v.iter().zip(&other.v).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            c: -self.c,
            v: self.v.iter().map(|x| -x).collect(),
        }
    }

    /// `[[1, aᵗ, c + ½a·b], [0, 𝟙ₙ, b], [0, 0, 1]]`.
    pub fn to_matrix(&self) -> UnitUpperMatrix {
        let n = self.dim() / 2;
        let (a, b) = self.v.split_at(n);
        let mut m = UnitUpperMatrix::identity(n + 2);
        for i in 0..n {
            m.set(0, i + 1, a[i]);
            m.set(i + 1, n + 1, b[i]);
        }
        let ab: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
        m.set(0, n + 1, self.c + 0.5 * ab);
        m
    }
}

impl From<WHElement<f64>> for SymplecticWHElement {
    fn from(g: WHElement<f64>) -> Self {
        Self {
            c: g.c,
            v: vec![g.a, g.b],
        }
    }
}

pub fn symplectic_compose(
    g1: &SymplecticWHElement,
    g2: &SymplecticWHElement,
) -> Result<SymplecticWHElement> {
    g1.compose(g2)
}
