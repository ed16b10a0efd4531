use serde::Serialize;

use crate::error::{Checked, Error, Result, Warning};
use crate::numerics::{find_local_minima, Distribution, Grid1D, LocalMinimum, PhaseSpaceGrid};
use crate::quantize::{density_diagnostics, gaussian_probe_signal, portrait, quantize_to_kernel, DensityReport, OperatorKernel};
use crate::Complex64;

use super::hermite::check_s;
use super::{stellar_distribution, stellar_grid, PlanarPoint, ZeroSet};

/// Parameters of one stellar run.
#[derive(Debug, Clone, PartialEq)]
pub struct StellarParams {
    pub s: f64,
    pub probe_a: f64,
    pub probe_r: f64,
    pub grid: PhaseSpaceGrid,
    /// Time axis on which the quantized kernel is sampled.
    pub time_grid: Grid1D,
    /// Minima must lie below this fraction of the maximum.
    pub rel_threshold: f64,
    /// Largest zero-to-minimum distance accepted as a match; also the radius
    /// around the origin excluded from the symmetry residual.
    pub match_cutoff: f64,
    pub symmetry_order: u32,
}

impl StellarParams {
    pub fn new(s: f64, probe_a: f64, probe_r: f64, grid: PhaseSpaceGrid) -> Self {
        Self {
            s,
            probe_a,
            probe_r,
            grid,
            time_grid: Grid1D::spanning(-40.0, 40.0, 512).expect("valid axis"),
            rel_threshold: 1e-2,
            match_cutoff: 0.5,
            symmetry_order: 5,
        }
    }

    /// `s = 0.945`, `a = r = 2` on [`stellar_grid`].
    pub fn pentagon() -> Self {
        Self::new(0.945, 2.0, 2.0, stellar_grid())
    }

    pub fn validate(&self) -> Result<()> {
        check_s(self.s)?;
        for (name, v) in [("probe_a", self.probe_a), ("probe_r", self.probe_r), ("match_cutoff", self.match_cutoff)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::InvalidParameter(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.rel_threshold > 0.0 && self.rel_threshold < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "rel_threshold must lie in (0,1), got {}",
                self.rel_threshold
            )));
        }
        if self.symmetry_order < 2 {
            return Err(Error::InvalidParameter("symmetry_order must be at least 2".into()));
        }
        Ok(())
    }
}

/// A zero and the minimum assigned to it, if any.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroMatch {
    pub zero: PlanarPoint,
    pub minimum: Option<LocalMinimum>,
    pub displacement: Option<f64>,
}

/// Minima of one distribution and how they relate to the zeros.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MinimaSummary {
    pub minima: Vec<LocalMinimum>,
    pub matches: Vec<ZeroMatch>,
    pub matched: usize,
    pub unmatched_minima: Vec<LocalMinimum>,
    pub max_displacement: Option<f64>,
    /// Hausdorff distance between the minima away from the origin and their
    /// rotation by `2π/k`; `None` when there are no such minima.
    pub symmetry_residual: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StellarReport {
    pub s: f64,
    pub probe_a: f64,
    pub probe_r: f64,
    pub normalization: f64,
    pub tail: f64,
    pub portrait_mass: f64,
    pub zeros: Vec<PlanarPoint>,
    pub original: MinimaSummary,
    pub portrait: MinimaSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StellarExperiment {
    pub distribution: Distribution,
    pub portrait: Distribution,
    pub report: StellarReport,
}

fn position(m: &LocalMinimum) -> Complex64 {
    Complex64::new(m.b, m.omega)
}

/// Greedy nearest-neighbour assignment: pairs are taken in increasing
/// distance order, each zero and each minimum used at most once, and pairs
/// farther apart than `cutoff` are never formed.
pub fn match_minima(zeros: &ZeroSet, minima: &[LocalMinimum], cutoff: f64) -> (Vec<ZeroMatch>, Vec<LocalMinimum>) {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::new();
    for (i, z) in zeros.points().iter().enumerate() {
        for (j, m) in minima.iter().enumerate() {
            let d = (position(m) - z).norm();
            if d <= cutoff {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| a.partial_cmp(b).expect("finite distances"));
    let mut zero_used = vec![None; zeros.degree()];
    let mut min_used = vec![false; minima.len()];
    for (d, i, j) in pairs {
        if zero_used[i].is_none() && !min_used[j] {
            zero_used[i] = Some((j, d));
            min_used[j] = true;
        }
    }
    let matches = zeros
        .points()
        .iter()
        .zip(&zero_used)
        .map(|(z, u)| ZeroMatch {
            zero: (*z).into(),
            minimum: u.map(|(j, _)| minima[j]),
            displacement: u.map(|(_, d)| d),
        })
        .collect();
    let unmatched = minima
        .iter()
        .zip(&min_used)
        .filter(|(_, used)| !**used)
        .map(|(m, _)| *m)
        .collect();
    (matches, unmatched)
}

fn directed(from: &[Complex64], to: &[Complex64]) -> f64 {
    from.iter()
        .map(|p| to.iter().map(|q| (p - q).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max)
}

/// Hausdorff distance between the points farther than `exclusion` from the
/// origin and their rotation by `2π/order`.
pub fn symmetry_residual(points: &[Complex64], order: u32, exclusion: f64) -> Option<f64> {
    let outer: Vec<Complex64> = points.iter().copied().filter(|p| p.norm() >= exclusion).collect();
    if outer.is_empty() {
        return None;
    }
    let r = Complex64::from_polar(1.0, std::f64::consts::TAU / order as f64);
    let rotated: Vec<Complex64> = outer.iter().map(|p| p * r).collect();
    Some(directed(&outer, &rotated).max(directed(&rotated, &outer)))
}

fn summarize(zeros: &ZeroSet, w: &Distribution, params: &StellarParams) -> Result<MinimaSummary> {
    let minima = find_local_minima(w, params.rel_threshold)?;
    let (matches, unmatched_minima) = match_minima(zeros, &minima, params.match_cutoff);
    let matched = matches.iter().filter(|m| m.minimum.is_some()).count();
    let max_displacement = matches
        .iter()
        .filter_map(|m| m.displacement)
        .fold(None, |acc: Option<f64>, d| Some(acc.map_or(d, |a| a.max(d))));
    let positions: Vec<Complex64> = minima.iter().map(position).collect();
    Ok(MinimaSummary {
        symmetry_residual: symmetry_residual(&positions, params.symmetry_order, params.match_cutoff),
        minima,
        matches,
        matched,
        unmatched_minima,
        max_displacement,
    })
}

/// Builds `w_{s,n}`, its portrait under the `(a, r)` Gaussian probes, and
/// compares the minima of both with the zeros.
pub fn stellar_experiment(zeros: &ZeroSet, params: &StellarParams) -> Result<Checked<StellarExperiment>> {
    params.validate()?;
    let w = stellar_distribution(zeros, params.s, &params.grid)?;
    let mut warnings: Vec<Warning> = Vec::new();
    let portrait = portrait(&w.distribution, params.probe_a, params.probe_r)?.collect_into(&mut warnings);
    let report = StellarReport {
        s: params.s,
        probe_a: params.probe_a,
        probe_r: params.probe_r,
        normalization: w.normalization,
        tail: w.tail,
        portrait_mass: portrait.mass(),
        zeros: zeros.to_planar(),
        original: summarize(zeros, &w.distribution, params)?,
        portrait: summarize(zeros, &portrait, params)?,
    };
    Ok(Checked::with_warnings(
        StellarExperiment { distribution: w.distribution, portrait, report },
        warnings,
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StellarQuantization {
    pub kernel: OperatorKernel,
    pub diagnostics: DensityReport,
}

/// Density operator `∫ ρ_a(ω,b) w_{s,n}(ω,b) dω db / 2π` with the Gaussian
/// probe of width `a`, plus its diagnostics.
pub fn quantize_stellar(zeros: &ZeroSet, params: &StellarParams) -> Result<Checked<StellarQuantization>> {
    params.validate()?;
    let w = stellar_distribution(zeros, params.s, &params.grid)?;
    let mut warnings = Vec::new();
    let probe = gaussian_probe_signal(params.probe_a, params.time_grid)?.collect_into(&mut warnings);
    let kernel = quantize_to_kernel(&w.distribution, &probe)?.collect_into(&mut warnings);
    let diagnostics = density_diagnostics(&kernel);
    Ok(Checked::with_warnings(StellarQuantization { kernel, diagnostics }, warnings))
}
