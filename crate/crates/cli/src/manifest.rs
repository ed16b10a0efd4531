use serde::Serialize;
use wh_core::Warning;

use crate::output::OutputEntry;

pub const TOOL_NAME: &str = "whtool";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Record of one run, written as `manifest.json` next to the outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub seed: u64,
    pub parameters: serde_json::Value,
    pub wall_time_seconds: f64,
    pub warnings: Vec<Warning>,
    pub outputs: Vec<OutputEntry>,
}
