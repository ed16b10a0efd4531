use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::groups::gwh3::GWH3Element;
use crate::groups::heisenberg::{ring_matmul3, zmod_group_elements, WHElement};
use crate::groups::matrix::{commutator_table, nilpotency_filtration_check, strictly_upper_basis};
use crate::groups::polarized::PolarizedElement;
use crate::groups::symplectic::SymplecticWHElement;

/// Samples drawn per randomized suite.
pub const GROUP_CHECK_SAMPLES: usize = 1000;
/// Entrywise tolerance for floating-point matrix comparisons.
pub const MATRIX_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub name: String,
    pub samples: usize,
    pub max_error: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl SuiteResult {
    fn measured(name: impl Into<String>, samples: usize, max_error: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            samples,
            max_error,
            tolerance,
            pass: max_error <= tolerance,
        }
    }

    fn exact(name: impl Into<String>, samples: usize, pass: bool) -> Self {
        Self {
            name: name.into(),
            samples,
            max_error: if pass { 0.0 } else { 1.0 },
            tolerance: 0.0,
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GroupCheckReport {
    pub seed: u64,
    pub suites: Vec<SuiteResult>,
}

impl GroupCheckReport {
    pub fn all_pass(&self) -> bool {
        self.suites.iter().all(|s| s.pass)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.name == name)
    }
}

fn coord(rng: &mut ChaCha8Rng) -> f64 {
    rng.random_range(-5.0..5.0)
}

fn coords(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| coord(rng)).collect()
}

/// Runs every group-law invariant with seeded random samples: matrix-product
/// agreement for each real variant, associativity, inverses, the dimension-2
/// symplectic reduction, exact integer and mod-5 structure, and the order-4
/// commutator algebra.
pub fn group_check(seed: u64) -> Result<GroupCheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = GROUP_CHECK_SAMPLES;
    let mut suites = Vec::new();

    // Three-dimensional real group.
    let mut mat = 0.0f64;
    let mut assoc = 0.0f64;
    let mut inv = 0.0f64;
    for _ in 0..n {
        let g = WHElement::new(coord(&mut rng), coord(&mut rng), coord(&mut rng));
        let h = WHElement::new(coord(&mut rng), coord(&mut rng), coord(&mut rng));
        let k = WHElement::new(coord(&mut rng), coord(&mut rng), coord(&mut rng));
        let gh = g.compose(&h)?;
        mat = mat.max(gh.to_matrix().max_abs_diff(&g.to_matrix().product(&h.to_matrix())?)?);
        let l = gh.compose(&k)?;
        let r = g.compose(&h.compose(&k)?)?;
        assoc = assoc.max((l.c - r.c).abs()).max((l.a - r.a).abs()).max((l.b - r.b).abs());
        let e = g.compose(&g.inverse())?;
        inv = inv.max(e.c.abs()).max(e.a.abs()).max(e.b.abs());
    }
    suites.push(SuiteResult::measured("h1_real_matrix", n, mat, MATRIX_TOLERANCE));
    suites.push(SuiteResult::measured("h1_real_associativity", n, assoc, MATRIX_TOLERANCE));
    suites.push(SuiteResult::measured("h1_real_inverse", n, inv, MATRIX_TOLERANCE));

    // Polarized groups in dimensions 1..3.
    for dim in 1..=3 {
        let mut err = 0.0f64;
        for _ in 0..n {
            let g = PolarizedElement::new(coords(&mut rng, dim), coords(&mut rng, dim), coord(&mut rng))?;
            let h = PolarizedElement::new(coords(&mut rng, dim), coords(&mut rng, dim), coord(&mut rng))?;
            err = err.max(g.compose(&h)?.to_matrix().max_abs_diff(&g.to_matrix().product(&h.to_matrix())?)?);
        }
        suites.push(SuiteResult::measured(format!("phn{dim}_matrix"), n, err, MATRIX_TOLERANCE));
    }

    // Symplectic groups in dimensions 2 and 4.
    for dim in [2, 4] {
        let mut err = 0.0f64;
        for _ in 0..n {
            let g = SymplecticWHElement::new(coord(&mut rng), coords(&mut rng, dim))?;
            let h = SymplecticWHElement::new(coord(&mut rng), coords(&mut rng, dim))?;
            err = err.max(g.compose(&h)?.to_matrix().max_abs_diff(&g.to_matrix().product(&h.to_matrix())?)?);
        }
        suites.push(SuiteResult::measured(format!("symplectic{dim}_matrix"), n, err, MATRIX_TOLERANCE));
    }
    let mut reduction = true;
    for _ in 0..n {
        let g = WHElement::new(coord(&mut rng), coord(&mut rng), coord(&mut rng));
        let h = WHElement::new(coord(&mut rng), coord(&mut rng), coord(&mut rng));
        let via = SymplecticWHElement::from(g).compose(&SymplecticWHElement::from(h))?;
        reduction &= via == SymplecticWHElement::from(g.compose(&h)?);
    }
    suites.push(SuiteResult::exact("symplectic2_reduces_to_h1", n, reduction));

    // Generalized group in the 4×4 unit upper triangular matrices.
    let mut mat = 0.0f64;
    let mut inv = 0.0f64;
    let mut assoc = 0.0f64;
    let draw = |rng: &mut ChaCha8Rng| {
        GWH3Element::new(coord(rng), [coord(rng), coord(rng)], [coord(rng), coord(rng), coord(rng)])
    };
    for _ in 0..n {
        let (g, h, k) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        mat = mat.max(g.compose(&h).to_matrix().max_abs_diff(&g.to_matrix().product(&h.to_matrix())?)?);
        inv = inv.max(g.compose(&g.inverse()).max_abs_diff(&GWH3Element::identity()));
        let l = g.compose(&h).compose(&k);
        let r = g.compose(&h.compose(&k));
        assoc = assoc.max(l.max_abs_diff(&r) / (1.0 + l.z.abs()));
    }
    suites.push(SuiteResult::measured("gwh3_matrix", n, mat, MATRIX_TOLERANCE));
    suites.push(SuiteResult::measured("gwh3_inverse", n, inv, MATRIX_TOLERANCE));
    suites.push(SuiteResult::measured("gwh3_associativity", n, assoc, MATRIX_TOLERANCE));

    // Integers: exact.
    let mut ok = true;
    for _ in 0..n {
        let mut el = || WHElement::new(rng.random_range(-1000i64..1000), rng.random_range(-1000i64..1000), rng.random_range(-1000i64..1000));
        let (g, h, k) = (el(), el(), el());
        ok &= g.compose(&h)?.compose(&k)? == g.compose(&h.compose(&k)?)?;
        ok &= ring_matmul3(&g.ring_matrix(), &h.ring_matrix()) == g.compose(&h)?.ring_matrix();
        ok &= g.compose(&g.inverse())?.is_identity();
    }
    suites.push(SuiteResult::exact("h1_integer_exact", n, ok));

    // ℤ/5ℤ: exhaustive.
    let p = 5u64;
    let all = zmod_group_elements(p)?;
    let key = |g: &WHElement<crate::groups::ZMod>| (g.c.value(), g.a.value(), g.b.value());
    let set: HashSet<_> = all.iter().map(key).collect();
    suites.push(SuiteResult::exact("h1_z5_order", all.len(), set.len() == 125 && all.len() == 125));
    let mut closed = true;
    let mut matrix_ok = true;
    for g in &all {
        for h in &all {
            let gh = g.compose(h)?;
            closed &= set.contains(&key(&gh));
            matrix_ok &= ring_matmul3(&g.ring_matrix(), &h.ring_matrix()) == gh.ring_matrix();
        }
    }
    suites.push(SuiteResult::exact("h1_z5_closure", all.len() * all.len(), closed && matrix_ok));
    let mut assoc_ok = true;
    for g in all.iter().step_by(3) {
        for h in all.iter().step_by(2) {
            let gh = g.compose(h)?;
            for k in &all {
                assoc_ok &= gh.compose(k)? == g.compose(&h.compose(k)?)?;
            }
        }
    }
    suites.push(SuiteResult::exact("h1_z5_associativity", 42 * 63 * 125, assoc_ok));
    let exponent = all.iter().all(|g| {
        let q = g.power(p as usize);
        q.a.value() == 0 && q.b.value() == 0
    });
    suites.push(SuiteResult::exact("h1_z5_exponent", all.len(), exponent));

    // Order-4 strictly upper triangular Lie algebra.
    let basis = strictly_upper_basis(4);
    let table = commutator_table(4);
    let mut agree = true;
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let dense = x.to_dense(4) * y.to_dense(4) - y.to_dense(4) * x.to_dense(4);
            agree &= dense == table[i][j].to_dense(4);
        }
    }
    suites.push(SuiteResult::exact("commutator_table", basis.len() * basis.len(), agree));
    let filtration = nilpotency_filtration_check(4)?;
    suites.push(SuiteResult::exact("nilpotency_filtration", filtration.checks.len(), filtration.all_pass()));

    Ok(GroupCheckReport { seed, suites })
}
