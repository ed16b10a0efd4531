use serde::Serialize;

use crate::groups::matrix::UnitUpperMatrix;

/// Element `(z, y, x)` of the generalized Heisenberg group sitting in the 4×4
/// unit upper triangular matrices, with `x` on the first superdiagonal, `y` on
/// the second and `z` in the corner.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GWH3Element {
    pub z: f64,
    pub y: [f64; 2],
    pub x: [f64; 3],
}

/// Second-level cocycle `(x₁x′₂ − x₂x′₁, x₂x′₃ − x₃x′₂)`.
pub fn second_level_cocycle(x: &[f64; 3], xp: &[f64; 3]) -> [f64; 2] {
    [x[0] * xp[1] - x[1] * xp[0], x[1] * xp[2] - x[2] * xp[1]]
}

/// Corner cocycle; with it `(z, y, x) ↦` [`GWH3Element::to_matrix`] is a group
/// homomorphism.
pub fn corner_cocycle(x: &[f64; 3], xp: &[f64; 3], y: &[f64; 2], yp: &[f64; 2]) -> f64 {
    let (x1, x2, x3) = (x[0], x[1], x[2]);
    let (u1, u2, u3) = (xp[0], xp[1], xp[2]);
    x1 * yp[1] - y[1] * u1 + y[0] * u3 - x3 * yp[0]
        - x1 * u2 * x3
        - u1 * x2 * u3
        - 0.5 * (x1 * x2 * u3 + x1 * u2 * u3 + u1 * x2 * x3 + u1 * u2 * x3)
}

impl GWH3Element {
    pub fn new(z: f64, y: [f64; 2], x: [f64; 3]) -> Self {
        Self { z, y, x }
    }

    pub fn identity() -> Self {
        Self::new(0.0, [0.0; 2], [0.0; 3])
    }

    /// `(z + z′ + ½Ω, y + y′ + ½S, x + x′)`.
    pub fn compose(&self, other: &Self) -> Self {
        let s = second_level_cocycle(&self.x, &other.x);
        let omega = corner_cocycle(&self.x, &other.x, &self.y, &other.y);
        Self {
            z: self.z + other.z + 0.5 * omega,
            y: [
                self.y[0] + other.y[0] + 0.5 * s[0],
                self.y[1] + other.y[1] + 0.5 * s[1],
            ],
            x: [
                self.x[0] + other.x[0],
                self.x[1] + other.x[1],
                self.x[2] + other.x[2],
            ],
        }
    }

    pub fn inverse(&self) -> Self {
        Self::new(-self.z, [-self.y[0], -self.y[1]], [-self.x[0], -self.x[1], -self.x[2]])
    }

    pub fn to_matrix(&self) -> UnitUpperMatrix {
        let [x1, x2, x3] = self.x;
        let [y1, y2] = self.y;
        let mut m = UnitUpperMatrix::identity(4);
        m.set(0, 1, x1);
        m.set(1, 2, x2);
        m.set(2, 3, x3);
        m.set(0, 2, y1 + 0.5 * x1 * x2);
        m.set(1, 3, y2 + 0.5 * x2 * x3);
        m.set(0, 3, self.z + 0.5 * (x1 * y2 + x3 * y1 + x1 * x2 * x3));
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = (self.z - other.z).abs();
        for i in 0..2 {
            d = d.max((self.y[i] - other.y[i]).abs());
        }
        for i in 0..3 {
            d = d.max((self.x[i] - other.x[i]).abs());
        }
        d
    }
}

pub fn gwh3_compose(g1: &GWH3Element, g2: &GWH3Element) -> GWH3Element {
    g1.compose(g2)
}

pub fn gwh3_to_matrix(g: &GWH3Element) -> UnitUpperMatrix {
    g.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let g = GWH3Element::new(0.0, [0.0; 2], [1.0, 0.0, 0.0]);
        let h = GWH3Element::new(0.0, [0.0; 2], [0.0, 1.0, 0.0]);
        assert_eq!(g.compose(&h), GWH3Element::new(0.0, [0.5, 0.0], [1.0, 1.0, 0.0]));
        assert!(GWH3Element::identity().to_matrix().is_identity());
        assert_eq!(GWH3Element::new(0.0, [0.0; 2], [1.0, 1.0, 0.0]).to_matrix().get(0, 2), 0.5);
        let k = GWH3Element::new(0.3, [1.0, -2.0], [0.5, 1.5, -1.0]);
        assert_eq!(k.compose(&GWH3Element::identity()), k);
    }

    fn element() -> impl Strategy<Value = GWH3Element> {
        (-5.0f64..5.0, [-5.0f64..5.0, -5.0f64..5.0], [-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0])
            .prop_map(|(z, y, x)| GWH3Element::new(z, y, x))
    }

    proptest! {
        #[test]
        fn matrix_homomorphism(g in element(), h in element()) {
            let lhs = g.compose(&h).to_matrix();
            let rhs = g.to_matrix().product(&h.to_matrix()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }

        #[test]
        fn negation_is_inverse(g in element()) {
            prop_assert!(g.compose(&g.inverse()).max_abs_diff(&GWH3Element::identity()) < 1e-12);
            prop_assert!(g.inverse().compose(&g).max_abs_diff(&GWH3Element::identity()) < 1e-12);
        }

        #[test]
        fn associativity(g in element(), h in element(), k in element()) {
            let l = g.compose(&h).compose(&k);
            let r = g.compose(&h.compose(&k));
            prop_assert!(l.max_abs_diff(&r) < 1e-10);
        }
    }
}
