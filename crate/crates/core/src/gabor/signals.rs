use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{Grid1D, SampledSignal};
use crate::Complex64;

/// `(πw)^{-1/4} e^{-(t−center)²/(2w)}`, unit norm for every width `w > 0`.
pub fn gaussian_signal(width: f64, center: f64, grid: Grid1D) -> Result<SampledSignal> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "gaussian width must be positive, got {width}"
        )));
    }
    let c = (PI * width).powf(-0.25);
    Ok(SampledSignal::from_fn(grid, |t| {
        Complex64::new(c * (-(t - center).powi(2) / (2.0 * width)).exp(), 0.0)
    }))
}

/// First excited Hermite function `√2 π^{-1/4} t e^{-t²/2}`.
pub fn hermite_gaussian(grid: Grid1D) -> SampledSignal {
    let c = 2f64.sqrt() * PI.powf(-0.25);
    SampledSignal::from_fn(grid, |t| Complex64::new(c * t * (-t * t / 2.0).exp(), 0.0))
}

/// Named synthetic signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestSignal {
    /// Unit Gaussian of width 1.
    Gaussian,
    /// `e^{-(t−3)²/2} + e^{-(t+3)²/2} e^{5it}`.
    TwoBump,
    /// First Hermite function.
    Hermite,
    /// Linear chirp under a Gaussian envelope plus a localized tone.
    Chirp,
}

impl TestSignal {
    pub const ALL: [TestSignal; 4] = [Self::Gaussian, Self::TwoBump, Self::Hermite, Self::Chirp];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Gaussian => "gaussian",
            Self::TwoBump => "two-bump",
            Self::Hermite => "hermite",
            Self::Chirp => "chirp",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }

    pub fn sample(&self, grid: Grid1D) -> SampledSignal {
        match self {
            Self::Gaussian => gaussian_signal(1.0, 0.0, grid).expect("positive width"),
            Self::TwoBump => SampledSignal::from_fn(grid, |t| {
                Complex64::new((-(t - 3.0).powi(2) / 2.0).exp(), 0.0)
                    + Complex64::from_polar((-(t + 3.0).powi(2) / 2.0).exp(), 5.0 * t)
            }),
            Self::Hermite => hermite_gaussian(grid),
            Self::Chirp => SampledSignal::from_fn(grid, |t| {
                Complex64::from_polar((-t * t / 16.0).exp(), 0.15 * t * t)
                    + Complex64::from_polar(0.5 * (-(t - 5.0).powi(2) / 4.0).exp(), 4.0 * t)
            }),
        }
    }
}
