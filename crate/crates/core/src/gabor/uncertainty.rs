use std::f64::consts::PI;

use rustfft::FftPlanner;
use serde::Serialize;

use crate::error::{Checked, Error, Result, Warning};
use crate::numerics::fourier::angular_frequencies;
use crate::numerics::grid::edge_ratio;
use crate::numerics::SampledSignal;
use crate::numerics::EDGE_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyReport {
    pub mean_time: f64,
    pub mean_frequency: f64,
    pub time_spread: f64,
    pub frequency_spread: f64,
    pub product: f64,
}

/// Product of the time and angular-frequency standard deviations of `|s|²`
/// and `|ŝ|²`.
///
/// Time moments use the `Δt`-weighted samples. Frequency moments use the FFT
/// bins at their centered angular frequencies `κ_q ∈ [−π/Δt, π/Δt)`. Warns when
/// either density has not decayed at the edges of its axis, since the moments
/// are then unreliable.
pub fn uncertainty_product(s: &SampledSignal) -> Result<Checked<UncertaintyReport>> {
    let n = s.grid.count();
    let weights: Vec<f64> = s.values.iter().map(|v| v.norm_sqr()).collect();
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Domain("uncertainty of a zero signal".into()));
    }
    let times: Vec<f64> = s.grid.points().collect();
    let (mean_time, var_time) = moments(&times, &weights);

    let mut spectrum = s.values.clone();
    FftPlanner::new().plan_fft_forward(n).process(&mut spectrum);
    let freqs = angular_frequencies(n, s.grid.step());
    let power: Vec<f64> = spectrum.iter().map(|v| v.norm_sqr()).collect();
    let (mean_frequency, var_freq) = moments(&freqs, &power);

    let mut warnings = Vec::new();
    let t_edge = edge_ratio(&s.values);
    if t_edge > EDGE_TOLERANCE {
        warnings.push(Warning::new(
            "uncertainty_product",
            format!("signal edge magnitude {t_edge:.3e} of its maximum; time moments may diverge"),
        ));
    }
    // The spectrum edges sit around the Nyquist bin, in the middle of FFT order.
    let mid = n / 2;
    let pmax = power.iter().copied().fold(0.0, f64::max);
    let f_edge = (power[mid.saturating_sub(1)..(mid + 1).min(n)]
        .iter()
        .copied()
        .fold(0.0, f64::max)
        / pmax)
        .sqrt();
    if f_edge > EDGE_TOLERANCE {
        warnings.push(Warning::new(
            "uncertainty_product",
            format!("spectrum reaches {f_edge:.3e} of its maximum near the Nyquist frequency {:.3}; frequency moments may diverge", PI / s.grid.step()),
        ));
    }
    let (time_spread, frequency_spread) = (var_time.sqrt(), var_freq.sqrt());
    Ok(Checked::with_warnings(
        UncertaintyReport {
            mean_time,
            mean_frequency,
            time_spread,
            frequency_spread,
            product: time_spread * frequency_spread,
        },
        warnings,
    ))
}

fn moments(x: &[f64], w: &[f64]) -> (f64, f64) {
    let total: f64 = w.iter().sum();
    let mean = x.iter().zip(w).map(|(x, w)| x * w).sum::<f64>() / total;
    let var = x.iter().zip(w).map(|(x, w)| (x - mean).powi(2) * w).sum::<f64>() / total;
    (mean, var)
}
