use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// Unit upper triangular real matrix: ones on the diagonal, zeros below.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitUpperMatrix(DMatrix<f64>);

impl UnitUpperMatrix {
    pub fn identity(order: usize) -> Self {
        Self(DMatrix::identity(order, order))
    }

    /// Validates the shape of `m`.
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                actual: m.ncols(),
            });
        }
        for i in 0..m.nrows() {
            if m[(i, i)] != 1.0 {
                return Err(Error::Domain(format!("diagonal entry {i} is {}", m[(i, i)])));
            }
            for j in 0..i {
                if m[(i, j)] != 0.0 {
                    return Err(Error::Domain(format!("entry ({i},{j}) below the diagonal is nonzero")));
                }
            }
        }
        Ok(Self(m))
    }

    pub fn order(&self) -> usize {
        self.0.nrows()
    }

    /// Entry at zero-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.0[(row, col)]
    }

    /// Sets a strictly upper entry.
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        assert!(row < col, "only strictly upper entries are free");
        self.0[(row, col)] = value;
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                actual: other.order(),
            });
        }
        Ok(Self(&self.0 * &other.0))
    }

    /// The inverse, which is again unit upper triangular.
    pub fn inverse(&self) -> Self {
        // (1 + N)^{-1} = Σ (−N)^k with N nilpotent.
        let n = self.order();
        let nil = &self.0 - DMatrix::identity(n, n);
        let mut term = DMatrix::identity(n, n);
        let mut acc = DMatrix::identity(n, n);
        for _ in 1..n {
            term = -(&term * &nil);
            acc += &term;
        }
        Self(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == DMatrix::identity(self.order(), self.order())
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.order() != other.order() {
            return Err(Error::DimensionMismatch {
                expected: self.order(),
                actual: other.order(),
            });
        }
        Ok((&self.0 - &other.0).amax())
    }
}

/// `𝟙 + Σ x_i E_{i,i+1}`: the vector sits on the first superdiagonal of an
/// `(n+1)×(n+1)` unit upper triangular matrix.
pub fn subdiag_embed(x: &[f64]) -> Result<UnitUpperMatrix> {
    if x.is_empty() {
        return Err(Error::InvalidParameter("subdiag_embed needs n >= 1".into()));
    }
    let mut m = UnitUpperMatrix::identity(x.len() + 1);
    for (i, &v) in x.iter().enumerate() {
        m.set(i, i + 1, v);
    }
    Ok(m)
}

/// Elementary matrix unit `E_{ij}` with one-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MatrixUnit {
    pub row: usize,
    pub col: usize,
}

impl MatrixUnit {
    pub fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// `E_{ij} E_{kl} = δ_{jk} E_{il}`.
    pub fn times(self, other: Self) -> Option<Self> {
        (self.col == other.row).then_some(Self::new(self.row, other.col))
    }

    /// Distance from the diagonal, `j − i`.
    pub fn height(&self) -> usize {
        self.col - self.row
    }

    pub fn to_dense(self, order: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(order, order);
        m[(self.row - 1, self.col - 1)] = 1.0;
        m
    }
}

impl std::fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "E{}{}", self.row, self.col)
    }
}

/// Integer combination of matrix units, kept sorted and free of zero terms.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct UnitCombination(pub Vec<(i64, MatrixUnit)>);

impl UnitCombination {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn single(coef: i64, unit: MatrixUnit) -> Self {
        let mut c = Self::zero();
        c.add(coef, unit);
        c
    }

    pub fn add(&mut self, coef: i64, unit: MatrixUnit) {
        match self.0.binary_search_by(|(_, u)| u.cmp(&unit)) {
            Ok(i) => {
                self.0[i].0 += coef;
                if self.0[i].0 == 0 {
                    self.0.remove(i);
                }
            }
            Err(i) if coef != 0 => self.0.insert(i, (coef, unit)),
            Err(_) => {}
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn units(&self) -> impl Iterator<Item = &MatrixUnit> {
        self.0.iter().map(|(_, u)| u)
    }

    pub fn to_dense(&self, order: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(order, order);
        for (c, u) in &self.0 {
            m += u.to_dense(order) * *c as f64;
        }
        m
    }
}

impl std::fmt::Display for UnitCombination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        for (k, (c, u)) in self.0.iter().enumerate() {
            match (k, *c) {
                (0, 1) => write!(f, "{u}")?,
                (0, -1) => write!(f, "-{u}")?,
                (0, c) => write!(f, "{c}{u}")?,
                (_, 1) => write!(f, " + {u}")?,
                (_, -1) => write!(f, " - {u}")?,
                (_, c) if c < 0 => write!(f, " - {}{u}", -c)?,
                (_, c) => write!(f, " + {c}{u}")?,
            }
        }
        Ok(())
    }
}

/// Strictly upper matrix units of the given order, ordered by height and then
/// by row: `E12, E23, E34, E13, E24, E14` for order 4.
pub fn strictly_upper_basis(order: usize) -> Vec<MatrixUnit> {
    let mut out = Vec::new();
    for h in 1..order {
        for i in 1..=order - h {
            out.push(MatrixUnit::new(i, i + h));
        }
    }
    out
}

pub fn unit_product(x: MatrixUnit, y: MatrixUnit) -> UnitCombination {
    x.times(y)
        .map(|u| UnitCombination::single(1, u))
        .unwrap_or_default()
}

pub fn unit_commutator(x: MatrixUnit, y: MatrixUnit) -> UnitCombination {
    let mut c = unit_product(x, y);
    if let Some(u) = y.times(x) {
        c.add(-1, u);
    }
    c
}

/// Table of products `XY` over [`strictly_upper_basis`], rows indexed by `X`.
pub fn product_table(order: usize) -> Vec<Vec<UnitCombination>> {
    let basis = strictly_upper_basis(order);
    basis
        .iter()
        .map(|&x| basis.iter().map(|&y| unit_product(x, y)).collect())
        .collect()
}

/// Table of commutators `[X, Y]` over [`strictly_upper_basis`].
pub fn commutator_table(order: usize) -> Vec<Vec<UnitCombination>> {
    let basis = strictly_upper_basis(order);
    basis
        .iter()
        .map(|&x| basis.iter().map(|&y| unit_commutator(x, y)).collect())
        .collect()
}

/// One inclusion of the graded filtration with its outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InclusionCheck {
    pub statement: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiltrationReport {
    pub order: usize,
    pub checks: Vec<InclusionCheck>,
}

impl FiltrationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Level of a matrix unit in the grading `V_k = span{E_ij : j − i = order − k}`,
/// so that the first superdiagonal is the top level and the corner is `V_1`.
pub fn level(unit: MatrixUnit, order: usize) -> usize {
    order - unit.height()
}

/// Checks the nilpotent filtration of the strictly upper triangular algebra
/// of order 4 by exhaustive commutators of matrix units:
/// `[V3,V3] ⊆ V2⊕V1`, `[V3,V2] ⊆ V1`, `[V2⊕V1, V2⊕V1] = 0` and `V1` central.
pub fn nilpotency_filtration_check(order: usize) -> Result<FiltrationReport> {
    if order != 4 {
        return Err(Error::InvalidParameter(format!(
            "the filtration check is defined for order 4, got {order}"
        )));
    }
    let basis = strictly_upper_basis(order);
    let at = |k: usize| -> Vec<MatrixUnit> {
        basis.iter().copied().filter(|u| level(*u, order) == k).collect()
    };
    let (v3, v2, v1) = (at(3), at(2), at(1));
    let v21: Vec<_> = v2.iter().chain(&v1).copied().collect();

    let within = |xs: &[MatrixUnit], ys: &[MatrixUnit], allowed: &[usize]| {
        xs.iter().all(|&x| {
            ys.iter().all(|&y| {
                let c = unit_commutator(x, y);
                // The symbolic rule must agree with dense matrix arithmetic.
                let dense = x.to_dense(order) * y.to_dense(order) - y.to_dense(order) * x.to_dense(order);
                dense == c.to_dense(order) && c.units().all(|u| allowed.contains(&level(*u, order)))
            })
        })
    };
    let vanishes = |xs: &[MatrixUnit], ys: &[MatrixUnit]| within(xs, ys, &[]);

    let checks = vec![
        InclusionCheck {
            statement: "[V3,V3] ⊆ V2⊕V1".into(),
            pass: within(&v3, &v3, &[2, 1]),
        },
        InclusionCheck {
            statement: "[V3,V2] ⊆ V1".into(),
            pass: within(&v3, &v2, &[1]),
        },
        InclusionCheck {
            statement: "[V2⊕V1,V2⊕V1] = 0".into(),
            pass: vanishes(&v21, &v21),
        },
        InclusionCheck {
            statement: "[V1, all] = 0".into(),
            pass: vanishes(&v1, &basis),
        },
    ];
    Ok(FiltrationReport { order, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e(i: usize, j: usize) -> MatrixUnit {
        MatrixUnit::new(i, j)
    }

    #[test]
    fn basis_order() {
        let names: Vec<String> = strictly_upper_basis(4).iter().map(|u| u.to_string()).collect();
        assert_eq!(names, ["E12", "E23", "E34", "E13", "E24", "E14"]);
    }

    #[test]
    fn commutator_examples() {
        assert_eq!(unit_commutator(e(1, 2), e(2, 3)), UnitCombination::single(1, e(1, 3)));
        assert_eq!(unit_commutator(e(2, 3), e(3, 4)), UnitCombination::single(1, e(2, 4)));
        assert!(unit_commutator(e(1, 2), e(3, 4)).is_zero());
        assert_eq!(unit_commutator(e(1, 3), e(3, 4)), UnitCombination::single(1, e(1, 4)));
        for u in strictly_upper_basis(4) {
            assert!(unit_commutator(e(1, 4), u).is_zero());
        }
        assert_eq!(unit_commutator(e(3, 4), e(2, 3)).to_string(), "-E24");
    }

    #[test]
    fn filtration_passes() {
        let r = nilpotency_filtration_check(4).unwrap();
        assert_eq!(r.checks.len(), 4);
        assert!(r.all_pass());
        assert!(nilpotency_filtration_check(5).is_err());
    }

    #[test]
    fn subdiag_examples() {
        assert!(subdiag_embed(&[0.0, 0.0]).unwrap().is_identity());
        assert!(subdiag_embed(&[]).is_err());
        let (x, y) = ([1.5, -2.0], [0.5, 3.0]);
        let prod = subdiag_embed(&x).unwrap().product(&subdiag_embed(&y).unwrap()).unwrap();
        let sum = subdiag_embed(&[2.0, 1.0]).unwrap();
        let diff = prod.as_matrix() - sum.as_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let expected = if (i, j) == (0, 2) { x[0] * y[1] } else { 0.0 };
                assert_eq!(diff[(i, j)], expected);
            }
        }
    }

    #[test]
    fn validation_and_inverse() {
        assert!(UnitUpperMatrix::new(DMatrix::from_element(2, 2, 1.0)).is_err());
        assert!(UnitUpperMatrix::new(DMatrix::identity(3, 3) * 2.0).is_err());
        let m = subdiag_embed(&[1.0, 2.0, 3.0]).unwrap();
        let p = m.product(&m.inverse()).unwrap();
        assert!(p.max_abs_diff(&UnitUpperMatrix::identity(4)).unwrap() < 1e-14);
    }

    proptest! {
        #[test]
        fn subdiag_product_rule(x in proptest::collection::vec(-3.0f64..3.0, 4), y in proptest::collection::vec(-3.0f64..3.0, 4)) {
            let p = subdiag_embed(&x).unwrap().product(&subdiag_embed(&y).unwrap()).unwrap();
            let s: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
            let mut expected = subdiag_embed(&s).unwrap().as_matrix().clone();
            for i in 0..3 {
                expected[(i, i + 2)] += x[i] * y[i + 1];
            }
            prop_assert!((p.as_matrix() - expected).amax() < 1e-12);
            let q = subdiag_embed(&y).unwrap().product(&subdiag_embed(&x).unwrap()).unwrap();
            let comm = p.as_matrix() - q.as_matrix();
            for i in 0..3 {
                prop_assert!((comm[(i, i + 2)] - (x[i] * y[i + 1] - x[i + 1] * y[i])).abs() < 1e-12);
            }
        }
    }
}
