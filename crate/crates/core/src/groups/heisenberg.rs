use serde::Serialize;

use crate::error::Result;
use crate::groups::matrix::UnitUpperMatrix;
use crate::groups::ring::{HeisenbergRing, PolarizedRing, ZMod};

/// Element `(c, a, b)` of the three-dimensional Heisenberg group over `R`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WHElement<R> {
    pub c: R,
    pub a: R,
    pub b: R,
}

impl<R: HeisenbergRing> WHElement<R> {
    pub fn new(c: R, a: R, b: R) -> Self {
        Self { c, a, b }
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        self.c.same_ring(&self.a)?;
        self.c.same_ring(&self.b)?;
        self.c.same_ring(&other.c)?;
        self.c.same_ring(&other.a)?;
        self.c.same_ring(&other.b)
    }

    /// Group product `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(Self {
            c: self
                .c
                .plus(other.c)
                .plus(R::cocycle(self.a, self.b, other.a, other.b)),
            a: self.a.plus(other.a),
            b: self.b.plus(other.b),
        })
    }

    pub fn inverse(&self) -> Self {
        Self {
            c: R::inverse_central(self.c, self.a, self.b),
            a: self.a.negated(),
            b: self.b.negated(),
        }
    }

    /// The identity in the same ring as `self`.
    pub fn identity_like(&self) -> Self {
        let z = self.c.zero_like();
        Self { c: z, a: z, b: z }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// `self^k` by repeated composition.
    pub fn power(&self, k: usize) -> Self {
        let mut acc = self.identity_like();
        for _ in 0..k {
            acc = acc.compose(self).expect("same ring");
        }
        acc
    }

    /// Group commutator `g h g⁻¹ h⁻¹`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.compose(other)?
            .compose(&self.inverse())?
            .compose(&other.inverse())
    }
}

/// Group product over any coordinate ring.
pub fn wh_compose<R: HeisenbergRing>(g1: &WHElement<R>, g2: &WHElement<R>) -> Result<WHElement<R>> {
    g1.compose(g2)
}

impl WHElement<f64> {
    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }

    /// `[[1, a, c + ½ab], [0, 1, b], [0, 0, 1]]`.
    pub fn to_matrix(&self) -> UnitUpperMatrix {
        let mut m = UnitUpperMatrix::identity(3);
        m.set(0, 1, self.a);
        m.set(1, 2, self.b);
        m.set(0, 2, self.c + 0.5 * self.a * self.b);
        m
    }
}

/// Matrix embedding of a real element.
pub fn wh_to_matrix(g: &WHElement<f64>) -> UnitUpperMatrix {
    g.to_matrix()
}

impl WHElement<i64> {
    pub fn identity() -> Self {
        Self::new(0, 0, 0)
    }
}

impl<R: PolarizedRing> WHElement<R> {
    /// `[[1, a, c], [0, 1, b], [0, 0, 1]]` with entries in the ring.
    pub fn ring_matrix(&self) -> [[R; 3]; 3] {
        let z = self.c.zero_like();
        let o = self.c.one_like();
        [[o, self.a, self.c], [z, o, self.b], [z, z, o]]
    }
}

/// Exact product of two 3×3 matrices over a ring.
pub fn ring_matmul3<R: HeisenbergRing>(x: &[[R; 3]; 3], y: &[[R; 3]; 3]) -> [[R; 3]; 3] {
    let z = x[0][0].zero_like();
    let mut out = [[z; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let mut acc = z;
            for k in 0..3 {
                acc = acc.plus(x[i][k].times(y[k][j]));
            }
            *cell = acc;
        }
    }
    out
}

/// All `p³` elements of the Heisenberg group over ℤ/pℤ.
pub fn zmod_group_elements(p: u64) -> Result<Vec<WHElement<ZMod>>> {
    ZMod::new(0, p)?;
    let mut out = Vec::with_capacity((p * p * p) as usize);
    for c in 0..p as i64 {
        for a in 0..p as i64 {
            for b in 0..p as i64 {
                out.push(WHElement::new(ZMod::new(c, p)?, ZMod::new(a, p)?, ZMod::new(b, p)?));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    #[test]
    fn real_examples() {
        let g = WHElement::new(0.0, 1.0, 0.0);
        let h = WHElement::new(0.0, 0.0, 1.0);
        assert_eq!(g.compose(&h).unwrap(), WHElement::new(0.5, 1.0, 1.0));
        let m = g.to_matrix().product(&h.to_matrix()).unwrap();
        assert!(m.max_abs_diff(&g.compose(&h).unwrap().to_matrix()).unwrap() < 1e-15);
        let k = WHElement::new(1.5, -2.0, 0.25);
        assert_eq!(k.compose(&WHElement::<f64>::identity()).unwrap(), k);
        assert!(k.compose(&WHElement::new(-1.5, 2.0, -0.25)).unwrap().is_identity());
        assert!(WHElement::<f64>::identity().to_matrix().is_identity());
        assert_eq!(WHElement::new(0.0, 1.0, 1.0).to_matrix().get(0, 2), 0.5);
    }

    #[test]
    fn integer_inverse_is_polarized() {
        let g = WHElement::new(3i64, 2, -5);
        assert_eq!(g.inverse(), WHElement::new(-13, -2, 5));
        assert!(g.compose(&g.inverse()).unwrap().is_identity());
        assert!(g.inverse().compose(&g).unwrap().is_identity());
    }

    #[test]
    fn zmod_group_structure() {
        let p = 5;
        let all = zmod_group_elements(p).unwrap();
        let set: HashSet<_> = all.iter().map(|g| (g.c.value(), g.a.value(), g.b.value())).collect();
        assert_eq!(set.len(), 125);
        for g in &all {
            for h in all.iter().step_by(7) {
                let gh = g.compose(h).unwrap();
                assert!(set.contains(&(gh.c.value(), gh.a.value(), gh.b.value())));
                let m = ring_matmul3(&g.ring_matrix(), &h.ring_matrix());
                assert_eq!(m, gh.ring_matrix());
            }
            assert!(g.compose(&g.inverse()).unwrap().is_identity());
            let pw = g.power(p as usize);
            assert_eq!((pw.a.value(), pw.b.value()), (0, 0));
        }
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let g = WHElement::new(ZMod::new(1, 5).unwrap(), ZMod::new(1, 5).unwrap(), ZMod::new(1, 5).unwrap());
        let h = WHElement::new(ZMod::new(1, 7).unwrap(), ZMod::new(1, 7).unwrap(), ZMod::new(1, 7).unwrap());
        assert!(g.compose(&h).is_err());
    }

    fn real_el() -> impl Strategy<Value = WHElement<f64>> {
        (-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0).prop_map(|(c, a, b)| WHElement::new(c, a, b))
    }

    fn int_el() -> impl Strategy<Value = WHElement<i64>> {
        (-1000i64..1000, -1000i64..1000, -1000i64..1000).prop_map(|(c, a, b)| WHElement::new(c, a, b))
    }

    proptest! {
        #[test]
        fn real_matrix_homomorphism(g in real_el(), h in real_el()) {
            let lhs = g.compose(&h).unwrap().to_matrix();
            let rhs = g.to_matrix().product(&h.to_matrix()).unwrap();
            prop_assert!(lhs.max_abs_diff(&rhs).unwrap() < 1e-12);
        }

        #[test]
        fn real_associativity(g in real_el(), h in real_el(), k in real_el()) {
            let l = g.compose(&h).unwrap().compose(&k).unwrap();
            let r = g.compose(&h.compose(&k).unwrap()).unwrap();
            prop_assert!((l.c - r.c).abs() < 1e-12 && (l.a - r.a).abs() < 1e-14 && (l.b - r.b).abs() < 1e-14);
        }

        #[test]
        fn integer_associativity_and_matrix(g in int_el(), h in int_el(), k in int_el()) {
            let l = g.compose(&h).unwrap().compose(&k).unwrap();
            let r = g.compose(&h.compose(&k).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(ring_matmul3(&g.ring_matrix(), &h.ring_matrix()), g.compose(&h).unwrap().ring_matrix());
        }

        #[test]
        fn commutator_is_central(g in int_el(), h in int_el()) {
            let k = g.commutator(&h).unwrap();
            prop_assert_eq!(k.a, 0);
            prop_assert_eq!(k.b, 0);
            prop_assert_eq!(k.c, g.a * h.b - h.a * g.b);
        }
    }
}
