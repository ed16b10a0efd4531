//! One function per command: validate, compute, write outputs, return the
//! resolved parameters and every warning raised.

use serde::Serialize;
use wh_core::cylinder::{
    choose_truncation, cyl_energy, cyl_gabor_transform, cyl_reconstruct, displace_cyl, reproducing_kernel_check,
    von_mises, KernelCheck,
};
use wh_core::gabor::{covariance_residual, gabor_reconstruct, gabor_transform, uncertainty_product, Probe, UncertaintyReport};
use wh_core::groups::group_check;
use wh_core::numerics::{Distribution, Grid1D};
use wh_core::quantize::{
    density_diagnostics, gaussian_probe_signal, gaussian_weight, par_kernel_closed, portrait, quantize_to_kernel,
    DensityReport,
};
use wh_core::stellar::{quantize_stellar, stellar_experiment, PlanarPoint, StellarParams, ZeroSet};
use wh_core::Warning;

use crate::config::{
    Command, CylinderParams, ExperimentConfig, Fixture, GaborParams, GroupCheckParams, QuantizeParams,
    StellarConfig, WeightSpec,
};
use crate::error::{validation, CliError};
use crate::output::{complex_grid_csv, distribution_csv, kernel_csv, read_distribution_csv, signal_csv, Staging};

/// Result of a command: the parameters actually used and its warnings.
pub struct Outcome {
    pub parameters: serde_json::Value,
    pub warnings: Vec<Warning>,
}

fn echo<T: Serialize>(p: &T) -> serde_json::Value {
    serde_json::to_value(p).expect("parameters serialize")
}

/// Parses and validates the parameters of `command` without computing
/// anything.
pub fn validate(command: Command, config: &ExperimentConfig) -> Result<(), CliError> {
    match command {
        Command::GroupCheck => config.parameters::<GroupCheckParams>().map(|_| ()),
        Command::Gabor => config.parameters::<GaborParams>()?.validate(),
        Command::Cylinder => config.parameters::<CylinderParams>()?.validate(),
        Command::Quantize => config.parameters::<QuantizeParams>()?.validate(),
        Command::Stellar => {
            let p: StellarConfig = config.parameters()?;
            stellar_inputs(&p, config).map(|_| ())
        }
    }
}

pub fn execute(command: Command, config: &ExperimentConfig, out: &mut Staging) -> Result<Outcome, CliError> {
    match command {
        Command::GroupCheck => run_group_check(config, out),
        Command::Gabor => run_gabor(config, out),
        Command::Cylinder => run_cylinder(config, out),
        Command::Quantize => run_quantize(config, out),
        Command::Stellar => run_stellar(config, out),
    }
}

fn run_group_check(config: &ExperimentConfig, out: &mut Staging) -> Result<Outcome, CliError> {
    let params: GroupCheckParams = config.parameters()?;
    let report = group_check(config.seed)?;
    #[derive(Serialize)]
    struct Doc<'a> {
        all_pass: bool,
        #[serde(flatten)]
        report: &'a wh_core::groups::GroupCheckReport,
    }
    out.write_json("group_check.json", &Doc { all_pass: report.all_pass(), report: &report })?;
    Ok(Outcome { parameters: echo(&params), warnings: Vec::new() })
}

#[derive(Serialize)]
struct CovarianceEntry {
    omega0: f64,
    b0: f64,
    residual: f64,
    max_abs: f64,
    relative: f64,
}

#[derive(Serialize)]
struct GaborReport {
    signal: &'static str,
    probe_width: f64,
    signal_energy: f64,
    coefficient_energy: f64,
    parseval_relative_error: f64,
    reconstruction_relative_l2_error: f64,
    covariance: Vec<CovarianceEntry>,
    uncertainty: UncertaintyReport,
}

fn run_gabor(config: &ExperimentConfig, out: &mut Staging) -> Result<Outcome, CliError> {
    let params: GaborParams = config.parameters()?;
    params.validate()?;
    let time = params.time.grid()?;
    let grid = params.lattice.grid()?;
    let probe = Probe::gaussian(params.probe_width, time).map_err(validation)?;
    let s = params.signal.sample(time);
    let mut warnings = Vec::new();
    let coeffs = gabor_transform(&probe, &s, &grid)?.collect_into(&mut warnings);
    let back = gabor_reconstruct(&probe, &coeffs)?.collect_into(&mut warnings);
    let mut covariance = Vec::new();
    for &(omega0, b0) in &params.covariance {
        let r = covariance_residual(&probe, &s, omega0, b0, &grid)?.collect_into(&mut warnings);
        covariance.push(CovarianceEntry { omega0, b0, residual: r.residual, max_abs: r.max_abs, relative: r.relative() });
    }
    let uncertainty = uncertainty_product(&s)?.collect_into(&mut warnings);
    let energy = s.norm_sqr();
    let report = GaborReport {
        signal: params.signal.name(),
        probe_width: params.probe_width,
        signal_energy: energy,
        coefficient_energy: coeffs.energy(),
        parseval_relative_error: (coeffs.energy() - energy).abs() / energy,
        reconstruction_relative_l2_error: back.relative_l2_error(&s),
        covariance,
        uncertainty,
    };
    out.write("gabor_coefficients.csv", complex_grid_csv(&grid.omega, &grid.b, &coeffs.values).as_bytes())?;
    out.write("reconstruction.csv", signal_csv("t", &time, &back.values).as_bytes())?;
    out.write_json("gabor_report.json", &report)?;
    Ok(Outcome { parameters: echo(&params), warnings })
}

#[derive(Serialize)]
struct CylinderReport {
    lambda: f64,
    m_max: usize,
    signal_energy: f64,
    coefficient_energy: f64,
    parseval_relative_error: f64,
    reconstruction_relative_l2_error: f64,
    edge_fraction: f64,
    reproducing_kernel: KernelCheck,
}

fn run_cylinder(config: &ExperimentConfig, out: &mut Staging) -> Result<Outcome, CliError> {
    let params: CylinderParams = config.parameters()?;
    params.validate()?;
    let n = params.n_gamma;
    let psi = von_mises(params.lambda, n).map_err(validation)?;
    let base = von_mises(params.signal.lambda, n).map_err(validation)?;
    let phi = displace_cyl(params.signal.m, params.signal.theta, &base);
    let m_max = params.m_max.unwrap_or_else(|| choose_truncation(&psi, &phi));
    let theta = Grid1D::circle(params.n_theta.unwrap_or(n)).map_err(validation)?;
    let coeffs = cyl_gabor_transform(&psi, &phi, m_max, &theta)?;
    let mut warnings = Vec::new();
    let back = cyl_reconstruct(&psi, &coeffs)?.collect_into(&mut warnings);
    let kernel = reproducing_kernel_check(params.lambda, n, params.kernel_samples, config.seed)?;
    let energy = phi.norm_sqr();
    let report = CylinderReport {
        lambda: params.lambda,
        m_max,
        signal_energy: energy,
        coefficient_energy: cyl_energy(&coeffs),
        parseval_relative_error: (cyl_energy(&coeffs) - energy).abs() / energy,
        reconstruction_relative_l2_error: back.relative_l2_error(&phi),
        edge_fraction: coeffs.edge_fraction(),
        reproducing_kernel: kernel,
    };
    let m_axis = Grid1D::new(-(m_max as f64), 1.0, 2 * m_max + 1).map_err(validation)?;
    out.write("cylinder_coefficients.csv", complex_grid_csv(&m_axis, &theta, &coeffs.values).as_bytes())?;
    out.write("reconstruction.csv", signal_csv("gamma", &phi.grid(), &back.values).as_bytes())?;
    out.write_json("cylinder_report.json", &report)?;
    Ok(Outcome { parameters: echo(&params), warnings })
}

#[derive(Serialize)]
struct QuantizeReport {
    weight_mass: f64,
    probe_width: f64,
    diagnostics: DensityReport,
    portrait_mass: Option<f64>,
}

fn load_weight(params: &QuantizeParams, config: &ExperimentConfig) -> Result<Distribution, CliError> {
    let w = match &params.weight {
        WeightSpec::Gaussian { var_omega, var_b, omega0, b0 } => {
            gaussian_weight(&params.lattice.grid()?, *var_omega, *var_b, *omega0, *b0).map_err(validation)?
        }
        WeightSpec::Par { a, r } => par_kernel_closed(*a, *r, &params.lattice.grid()?).map_err(validation)?,
        WeightSpec::Csv { path } => {
            let full = config.resolve(path);
            let text = std::fs::read_to_string(&full)
                .map_err(|e| CliError::Validation(format!("cannot read weight {}: {e}", full.display())))?;
            read_distribution_csv(&text)?
        }
    };
    if params.normalize {
        w.normalize().map_err(validation)
    } else {
        Ok(w)
    }
}

fn run_quantize(config: &ExperimentConfig, out: &mut Staging) -> Result<Outcome, CliError> {
    let params: QuantizeParams = config.parameters()?;
    params.validate()?;
    let w = load_weight(&params, config)?;
    let mut warnings = Vec::new();
    let probe = gaussian_probe_signal(params.probe_width, params.time.grid()?)
        .map_err(validation)?
        .collect_into(&mut warnings);
    let kernel = quantize_to_kernel(&w, &probe)?.collect_into(&mut warnings);
    let diagnostics = density_diagnostics(&kernel);
    let mut portrait_mass = None;
    out.write("weight.csv", distribution_csv(&w).as_bytes())?;
    out.write("kernel.csv", kernel_csv(&kernel).as_bytes())?;
    if let Some(p) = params.portrait {
        let pw = portrait(&w, p.a, p.r)?.collect_into(&mut warnings);
        portrait_mass = Some(pw.mass());
        out.write("portrait.csv", distribution_csv(&pw).as_bytes())?;
    }
    out.write_json(
        "quantize_report.json",
        &QuantizeReport { weight_mass: w.mass(), probe_width: params.probe_width, diagnostics, portrait_mass },
    )?;
    Ok(Outcome { parameters: echo(&params), warnings })
}

fn stellar_inputs(p: &StellarConfig, config: &ExperimentConfig) -> Result<(ZeroSet, StellarParams), CliError> {
    let zeros = match p.sources() {
        0 => ZeroSet::pentagon(),
        1 => {
            if let Some(Fixture::Pentagon) = p.fixture {
                ZeroSet::pentagon()
            } else if let Some(z) = &p.zeros {
                ZeroSet::from_planar(z).map_err(validation)?
            } else {
                let path = config.resolve(p.zeros_path.as_deref().expect("one source"));
                let text = std::fs::read_to_string(&path)
                    .map_err(|e| CliError::Validation(format!("cannot read zeros {}: {e}", path.display())))?;
                let pts: Vec<PlanarPoint> = serde_json::from_str(&text)
                    .map_err(|e| CliError::Validation(format!("invalid zeros file {}: {e}", path.display())))?;
                ZeroSet::from_planar(&pts).map_err(validation)?
            }
        }
        _ => {
            return Err(CliError::Validation(
                "give at most one of fixture, zeros_path and zeros".into(),
            ))
        }
    };
    let mut params = StellarParams::new(p.s, p.probe_a, p.probe_r, p.lattice.grid()?);
    params.time_grid = p.time.grid()?;
    params.rel_threshold = p.rel_threshold;
    params.match_cutoff = p.match_cutoff;
    params.symmetry_order = p.symmetry_order;
    params.validate().map_err(validation)?;
    Ok((zeros, params))
}

fn run_stellar(config: &ExperimentConfig, out: &mut Staging) -> Result<Outcome, CliError> {
    let p: StellarConfig = config.parameters()?;
    let (zeros, params) = stellar_inputs(&p, config)?;
    let mut warnings = Vec::new();
    let run = stellar_experiment(&zeros, &params)?.collect_into(&mut warnings);
    out.write("distribution.csv", distribution_csv(&run.distribution).as_bytes())?;
    out.write("portrait.csv", distribution_csv(&run.portrait).as_bytes())?;
    out.write_json("stellar_report.json", &run.report)?;
    if p.quantize {
        let q = quantize_stellar(&zeros, &params)?.collect_into(&mut warnings);
        out.write_json("quantization.json", &q.diagnostics)?;
    }
    Ok(Outcome { parameters: echo(&p), warnings })
}
