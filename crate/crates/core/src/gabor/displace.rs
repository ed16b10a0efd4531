use crate::error::Checked;
use crate::numerics::fourier::{edge_warnings, SpectralShifter};
use crate::numerics::SampledSignal;
use crate::Complex64;

/// Applies `D(ω,b)s(t) = e^{iω(t−b/2)} s(t−b)` with reusable FFT plans.
#[derive(Debug, Clone)]
pub struct Displacer {
    shifter: SpectralShifter,
}

impl Displacer {
    pub fn new(n: usize) -> Self {
        Self {
            shifter: SpectralShifter::new(n),
        }
    }

    /// Displaces `values` sampled on `t_j = start + j·step` in place.
    pub fn apply(&self, omega: f64, b: f64, start: f64, step: f64, values: &mut [Complex64]) {
        if b != 0.0 {
            self.shifter.shift_in_place(values, b / step);
        }
        if omega != 0.0 {
            for (j, v) in values.iter_mut().enumerate() {
                let t = start + j as f64 * step;
                *v *= Complex64::from_polar(1.0, omega * (t - 0.5 * b));
            }
        }
    }
}

/// Time-frequency displacement of a sampled signal.
pub fn displace(omega: f64, b: f64, s: &SampledSignal) -> Checked<SampledSignal> {
    let mut out = s.clone();
    if omega == 0.0 && b == 0.0 {
        return Checked::clean(out);
    }
    Displacer::new(s.grid.count()).apply(omega, b, s.grid.start(), s.grid.step(), &mut out.values);
    Checked::with_warnings(out, edge_warnings("displace", s))
}
