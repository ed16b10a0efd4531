//! Configuration-driven front end for `wh-core`: parses a JSON experiment
//! config, dispatches to one command, and writes its outputs together with a
//! hashed manifest.

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod output;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use config::{Command, ExperimentConfig};
use error::CliError;
use manifest::{RunManifest, TOOL_NAME, TOOL_VERSION};
use output::{json_document, Staging};

#[derive(Debug, Parser)]
#[command(name = "whtool", version, about = "Weyl-Heisenberg time-frequency experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub action: Action,
    /// Experiment config (JSON); defaults apply when omitted.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory, created atomically.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Fail with exit status 3 when any numerical warning is raised.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Worker threads for grid evaluations.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Replace an existing non-empty output directory.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum Action {
    /// Group-law and matrix-embedding invariant suites.
    GroupCheck,
    /// Gabor transform, reconstruction and covariance on the line.
    Gabor,
    /// Gabor analysis on the cylinder with a von Mises window.
    Cylinder,
    /// Quantize a phase-space distribution into an operator kernel.
    Quantize,
    /// Stellar-constellation experiment.
    Stellar,
    /// Run the command named in the config.
    Run,
}

impl Action {
    fn command(self) -> Option<Command> {
        match self {
            Action::GroupCheck => Some(Command::GroupCheck),
            Action::Gabor => Some(Command::Gabor),
            Action::Cylinder => Some(Command::Cylinder),
            Action::Quantize => Some(Command::Quantize),
            Action::Stellar => Some(Command::Stellar),
            Action::Run => None,
        }
    }
}

fn resolve_command(action: Action, config: &ExperimentConfig) -> Result<Command, CliError> {
    match (action.command(), config.command) {
        (Some(a), Some(c)) if a != c => Err(CliError::Validation(format!(
            "subcommand {} does not match config command {}",
            a.name(),
            c.name()
        ))),
        (Some(a), _) => Ok(a),
        (None, Some(c)) => Ok(c),
        (None, None) => Err(CliError::Validation("the config must name a command for `run`".into())),
    }
}

/// Runs one invocation and returns the manifest that was written.
pub fn run(cli: &Cli) -> Result<RunManifest, CliError> {
    let started = Instant::now();
    let config = match &cli.config {
        Some(p) => ExperimentConfig::load(p)?,
        None => ExperimentConfig::default(),
    };
    let command = resolve_command(cli.action, &config)?;
    commands::validate(command, &config)?;
    let out_dir = cli
        .out
        .clone()
        .ok_or_else(|| CliError::Validation("--out <dir> is required".into()))?;
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(CliError::Validation("--threads must be at least 1".into()));
        }
        // A second build in the same process keeps the first pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let mut staging = Staging::new(&out_dir, cli.force)?;
    let outcome = commands::execute(command, &config, &mut staging)?;
    if cli.strict && !outcome.warnings.is_empty() {
        return Err(CliError::Strict(outcome.warnings));
    }
    let manifest = RunManifest {
        tool: TOOL_NAME,
        version: TOOL_VERSION,
        command: command.name(),
        seed: config.seed,
        parameters: outcome.parameters,
        wall_time_seconds: started.elapsed().as_secs_f64(),
        warnings: outcome.warnings,
        outputs: staging.entries().to_vec(),
    };
    staging.write_unlisted("manifest.json", json_document(&manifest).as_bytes())?;
    staging.commit()?;
    Ok(manifest)
}

/// Process entry point: prints a one-line JSON status and returns the exit
/// code.
pub fn main_with(cli: &Cli) -> i32 {
    match run(cli) {
        Ok(m) => {
            let status = serde_json::json!({
                "schema": 1,
                "status": "ok",
                "command": m.command,
                "outputs": m.outputs.len(),
                "warnings": m.warnings.len(),
            });
            println!("{status}");
            0
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.exit_code()
        }
    }
}
