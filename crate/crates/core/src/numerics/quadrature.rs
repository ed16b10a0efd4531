use std::f64::consts::PI;

use num_complex::Complex64;

/// Trapezoid rule on `[0, 2π)` sampled at `values.len()` equispaced nodes
/// without the duplicated endpoint: `Δγ · Σ values`.
///
/// Exact for trigonometric polynomials of degree below `N/2`.
pub fn periodic_trapezoid(values: &[Complex64]) -> Complex64 {
    if values.is_empty() {
        return Complex64::new(0.0, 0.0);
    }
    let step = 2.0 * PI / values.len() as f64;
    values.iter().sum::<Complex64>() * step
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::bessel_i;
    use proptest::prelude::*;

    fn nodes(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| 2.0 * PI * i as f64 / n as f64)
    }

    #[test]
    fn constant_and_fourier_mode() {
        let ones = vec![Complex64::new(1.0, 0.0); 64];
        assert!((periodic_trapezoid(&ones).re - 2.0 * PI).abs() < 1e-14);
        let mode: Vec<_> = nodes(64).map(|g| Complex64::from_polar(1.0, g)).collect();
        assert!(periodic_trapezoid(&mode).norm() < 1e-14);
    }

    #[test]
    fn exponential_cosine_gives_bessel() {
        let v: Vec<_> = nodes(256)
            .map(|g| Complex64::new((2.0 * g.cos()).exp(), 0.0))
            .collect();
        let expected = 2.0 * PI * bessel_i(0, 2.0).unwrap();
        let got = periodic_trapezoid(&v);
        assert!((got.re - expected).abs() < 1e-12 * expected);
        assert!((got.re - 14.3230).abs() < 1e-4);
    }

    proptest! {
        #[test]
        fn exact_for_low_degree_trig_polynomials(
            coeffs in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..16),
        ) {
            let n = 32usize;
            let c0 = Complex64::new(coeffs[0].0, coeffs[0].1);
            let vals: Vec<_> = nodes(n)
                .map(|g| {
                    coeffs.iter().enumerate().map(|(k, &(re, im))| {
                        Complex64::new(re, im) * Complex64::from_polar(1.0, k as f64 * g)
                    }).sum::<Complex64>()
                })
                .collect();
            let got = periodic_trapezoid(&vals);
            let expected = 2.0 * PI * c0;
            prop_assert!((got - expected).norm() <= 1e-13 * (1.0 + expected.norm()) * 2.0 * PI);
        }
    }
}
