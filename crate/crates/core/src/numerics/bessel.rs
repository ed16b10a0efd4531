use crate::error::{Error, Result};

/// Largest order accepted by [`bessel_i`].
pub const MAX_BESSEL_ORDER: u32 = 64;
/// Largest argument accepted by [`bessel_i`]; `e^x` overflows shortly after.
pub const MAX_BESSEL_ARG: f64 = 700.0;

const SERIES_LIMIT: f64 = 30.0;
const RESCALE_AT: f64 = 1e250;

/// Modified Bessel function of the first kind `I_order(x)` for `x >= 0`.
///
/// Ascending series up to `x = 30`, Miller's downward recurrence normalized by
/// `e^x = I_0 + 2 Σ I_k` beyond.
pub fn bessel_i(order: u32, x: f64) -> Result<f64> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_i needs x >= 0, got {x}")));
    }
    if order > MAX_BESSEL_ORDER {
        return Err(Error::Domain(format!(
            "bessel_i order {order} exceeds cap {MAX_BESSEL_ORDER}"
        )));
    }
    if x > MAX_BESSEL_ARG {
        return Err(Error::Domain(format!(
            "bessel_i argument {x} exceeds cap {MAX_BESSEL_ARG}"
        )));
    }
    if x == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    if x <= SERIES_LIMIT {
        Ok(series(order, x))
    } else {
        Ok(miller(order, x))
    }
}

/// `I_n(x)` for any integer order and real argument, using `I_{-n} = I_n` and
/// `I_n(-x) = (-1)^n I_n(x)`.
pub fn bessel_i_int(order: i64, x: f64) -> Result<f64> {
    let n = order.unsigned_abs();
    let n32 = u32::try_from(n).map_err(|_| {
        Error::Domain(format!("bessel_i order {order} exceeds cap {MAX_BESSEL_ORDER}"))
    })?;
    let v = bessel_i(n32, x.abs())?;
    Ok(if x < 0.0 && n % 2 == 1 { -v } else { v })
}

fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for j in 1..=order {
        lead *= half / j as f64;
    }
    let q = half * half;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= q / (k * (k + order as f64));
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
        k += 1.0;
    }
    lead * sum
}

fn miller(order: u32, x: f64) -> f64 {
    let start = order as usize + (100.0 * x).sqrt() as usize + 30;
    let mut above = 0.0;
    let mut current = 1e-280;
    let mut target = 0.0;
    // I_0 + 2 Σ_{k>=1} I_k in the recurrence's arbitrary scale.
    let mut norm = 0.0;
    for k in (1..=start).rev() {
        let below = above + (2.0 * k as f64 / x) * current;
        if k == order as usize {
            target = current;
        }
        norm += 2.0 * current;
        above = current;
        current = below;
        if current.abs() > RESCALE_AT {
            above /= RESCALE_AT;
            current /= RESCALE_AT;
            target /= RESCALE_AT;
            norm /= RESCALE_AT;
        }
    }
    if order == 0 {
        target = current;
    }
    norm += current;
    // Divide first so `e^x` is only multiplied into a ratio below 1.
    (target / norm) * x.exp()
}
