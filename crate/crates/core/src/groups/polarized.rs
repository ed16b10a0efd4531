use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::matrix::UnitUpperMatrix;

/// Element `(a, b, c)` of the polarized Heisenberg group on `ℝⁿ × ℝⁿ × ℝ`
/// with law `(a+a′, b+b′, c+c′+a·b′)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolarizedElement {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub c: f64,
}

fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(p, q)| p * q).sum()
}

fn add(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(p, q)| p + q).collect()
}

impl PolarizedElement {
    pub fn new(a: Vec<f64>, b: Vec<f64>, c: f64) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                actual: b.len(),
            });
        }
        if a.is_empty() {
            return Err(Error::InvalidParameter("dimension must be at least 1".into()));
        }
        Ok(Self { a, b, c })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            a: vec![0.0; n],
            b: vec![0.0; n],
            c: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: other.dim(),
            });
        }
        Ok(Self {
            a: add(&self.a, &other.a),
            b: add(&self.b, &other.b),
            c: self.c + other.c + dot(&self.a, &other.b),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            a: self.a.iter().map(|v| -v).collect(),
            b: self.b.iter().map(|v| -v).collect(),
            c: dot(&self.a, &self.b) - self.c,
        }
    }

    /// Group commutator `g h g⁻¹ h⁻¹`; its central coordinate is
    /// `a·b′ − a′·b`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?
            .compose(&self.inverse())?
            .compose(&other.inverse())
    }

    /// `(n+2)×(n+2)` block matrix `[[1, aᵗ, c], [0, 𝟙ₙ, b], [0, 0, 1]]`.
    pub fn to_matrix(&self) -> UnitUpperMatrix {
        let n = self.dim();
        let mut m = UnitUpperMatrix::identity(n + 2);
        for i in 0..n {
            m.set(0, i + 1, self.a[i]);
            m.set(i + 1, n + 1, self.b[i]);
        }
        m.set(0, n + 1, self.c);
        m
    }
}

pub fn phn_compose(g1: &PolarizedElement, g2: &PolarizedElement) -> Result<PolarizedElement> {
    g1.compose(g2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn el(a: f64, b: f64, c: f64) -> PolarizedElement {
        PolarizedElement::new(vec![a], vec![b], c).unwrap()
    }

    #[test]
    fn one_dimensional_examples() {
        let g = el(1.0, 0.0, 0.0);
        let h = el(0.0, 1.0, 0.0);
        assert_eq!(g.compose(&h).unwrap(), el(1.0, 1.0, 1.0));
        assert_eq!(g.compose(&PolarizedElement::identity(1)).unwrap(), g);
        assert_eq!(g.commutator(&h).unwrap().c, 1.0);
        let m = g.to_matrix().product(&h.to_matrix()).unwrap();
        assert_eq!(m, g.compose(&h).unwrap().to_matrix());
    }

    #[test]
    fn dimension_errors() {
        assert!(PolarizedElement::new(vec![1.0], vec![1.0, 2.0], 0.0).is_err());
        assert!(PolarizedElement::new(vec![], vec![], 0.0).is_err());
        let g = PolarizedElement::identity(1);
        assert!(g.compose(&PolarizedElement::identity(2)).is_err());
    }

    fn element(n: usize) -> impl Strategy<Value = PolarizedElement> {
        (
            proptest::collection::vec(-5.0f64..5.0, n),
            proptest::collection::vec(-5.0f64..5.0, n),
            -5.0f64..5.0,
        )
            .prop_map(|(a, b, c)| PolarizedElement::new(a, b, c).unwrap())
    }

    proptest! {
        #[test]
        fn matrix_homomorphism(n in 1usize..=3, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut draw = || {
                let a = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
                let b = (0..n).map(|_| rng.random_range(-5.0..5.0)).collect();
                PolarizedElement::new(a, b, rng.random_range(-5.0..5.0)).unwrap()
            };
            let (g, h) = (draw(), draw());
            let lhs = g.compose(&h).unwrap().to_matrix();
            let rhs = g.to_matrix().product(&h.to_matrix()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }

        #[test]
        fn commutator_depends_on_skew_pairing(g in element(3), h in element(3)) {
            let k = g.commutator(&h).unwrap();
            let expected = dot(&g.a, &h.b) - dot(&h.a, &g.b);
            prop_assert!((k.c - expected).abs() < 1e-10);
            prop_assert!(k.a.iter().chain(&k.b).all(|v| v.abs() < 1e-12));
        }

        #[test]
        fn inverse_and_associativity(g in element(2), h in element(2), k in element(2)) {
            let id = g.compose(&g.inverse()).unwrap();
            prop_assert!(id.c.abs() < 1e-12);
            let l = g.compose(&h).unwrap().compose(&k).unwrap();
            let r = g.compose(&h.compose(&k).unwrap()).unwrap();
            prop_assert!((l.c - r.c).abs() < 1e-12);
        }
    }
}
