//! Staged output directory, CSV and JSON writers, and the grid CSV reader.
//!
//! Grid CSV layout: a comment header naming the axes, one line with
//! `axis0_start,axis0_step,axis0_count,axis1_start,axis1_step,axis1_count`,
//! then one row per axis-0 node. Real grids hold `axis1_count` values per
//! row, complex grids `re,im` pairs. Numbers use 17 significant digits and
//! lines end in LF.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};
use wh_core::numerics::{Distribution, Grid1D, PhaseSpaceGrid};
use wh_core::quantize::OperatorKernel;
use wh_core::Complex64;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

pub const GRID_HEADER: &str = "# axis0_start,axis0_step,axis0_count,axis1_start,axis1_step,axis1_count";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OutputEntry {
    pub file: String,
    pub bytes: u64,
    pub sha256: String,
}

/// Files are written to a sibling staging directory and moved into place in
/// one rename by [`Staging::commit`]; dropping an uncommitted staging area
/// deletes it.
#[derive(Debug)]
pub struct Staging {
    dir: PathBuf,
    target: PathBuf,
    entries: Vec<OutputEntry>,
    committed: bool,
}

impl Staging {
    pub fn new(target: &Path, replace: bool) -> Result<Self, CliError> {
        if target.exists() && !replace && !is_empty_dir(target)? {
            return Err(CliError::Io(format!(
                "output directory {} already exists and is not empty (use --force to replace it)",
                target.display()
            )));
        }
        let parent = match target.parent() {
            Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
            _ => PathBuf::from("."),
        };
        fs::create_dir_all(&parent)?;
        let name = target
            .file_name()
            .ok_or_else(|| CliError::Io(format!("invalid output path {}", target.display())))?
            .to_string_lossy()
            .into_owned();
        let dir = parent.join(format!(".{name}.staging-{}", std::process::id()));
        if dir.exists() {
            fs::remove_dir_all(&dir)?;
        }
        fs::create_dir(&dir)?;
        Ok(Self {
            dir,
            target: target.to_path_buf(),
            entries: Vec::new(),
            committed: false,
        })
    }

    pub fn entries(&self) -> &[OutputEntry] {
        &self.entries
    }

    /// Writes a file and records it in the inventory.
    pub fn write(&mut self, file: &str, contents: &[u8]) -> Result<(), CliError> {
        fs::write(self.dir.join(file), contents)?;
        self.entries.push(OutputEntry {
            file: file.to_string(),
            bytes: contents.len() as u64,
            sha256: sha256_hex(contents),
        });
        Ok(())
    }

    /// Writes a file that is not part of the hashed inventory.
    pub fn write_unlisted(&mut self, file: &str, contents: &[u8]) -> Result<(), CliError> {
        fs::write(self.dir.join(file), contents)?;
        Ok(())
    }

    pub fn write_json<T: Serialize>(&mut self, file: &str, value: &T) -> Result<(), CliError> {
        self.write(file, json_document(value).as_bytes())
    }

    pub fn commit(mut self) -> Result<PathBuf, CliError> {
        if self.target.exists() {
            if self.target.is_dir() {
                fs::remove_dir_all(&self.target)?;
            } else {
                return Err(CliError::Io(format!("{} exists and is not a directory", self.target.display())));
            }
        }
        fs::rename(&self.dir, &self.target)?;
        self.committed = true;
        Ok(self.target.clone())
    }
}

impl Drop for Staging {
    fn drop(&mut self) {
        if !self.committed {
            let _ = fs::remove_dir_all(&self.dir);
        }
    }
}

fn is_empty_dir(p: &Path) -> Result<bool, CliError> {
    if !p.is_dir() {
        return Ok(false);
    }
    Ok(fs::read_dir(p)?.next().is_none())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema: u32,
    #[serde(flatten)]
    body: &'a T,
}

/// Pretty JSON with a leading `"schema": 1`, newline-terminated.
pub fn json_document<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(&Versioned {
        schema: SCHEMA_VERSION,
        body: value,
    })
    .expect("report serializes");
    s.push('\n');
    s
}

pub fn number(v: f64) -> String {
    format!("{v:.16e}")
}

fn axis_fields(g: &Grid1D) -> String {
    format!("{},{},{}", number(g.start()), number(g.step()), g.count())
}

fn grid_header(axis0: &Grid1D, axis1: &Grid1D) -> String {
    format!("{GRID_HEADER}\n{},{}\n", axis_fields(axis0), axis_fields(axis1))
}

/// Real values, row-major over (axis0, axis1).
pub fn real_grid_csv(axis0: &Grid1D, axis1: &Grid1D, values: &[f64]) -> String {
    let n1 = axis1.count();
    let mut out = grid_header(axis0, axis1);
    for row in values.chunks(n1) {
        let line: Vec<String> = row.iter().map(|v| number(*v)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

/// Complex values, row-major over (axis0, axis1), as `re,im` pairs.
pub fn complex_grid_csv(axis0: &Grid1D, axis1: &Grid1D, values: &[Complex64]) -> String {
    let n1 = axis1.count();
    let mut out = grid_header(axis0, axis1);
    for row in values.chunks(n1) {
        let line: Vec<String> = row.iter().map(|v| format!("{},{}", number(v.re), number(v.im))).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    out
}

pub fn distribution_csv(w: &Distribution) -> String {
    let g = w.grid();
    real_grid_csv(&g.omega, &g.b, w.values())
}

/// `x,re,im` per sample.
pub fn signal_csv(axis_name: &str, grid: &Grid1D, values: &[Complex64]) -> String {
    let mut out = format!("{axis_name},re,im\n");
    for (i, v) in values.iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", number(grid.point(i)), number(v.re), number(v.im));
    }
    out
}

/// `t_i,t_j,re,im` per kernel entry.
pub fn kernel_csv(kernel: &OperatorKernel) -> String {
    let grid = &kernel.time_grid;
    let n = grid.count();
    let mut out = String::from("t_i,t_j,re,im\n");
    for i in 0..n {
        let ti = number(grid.point(i));
        for j in 0..n {
            let v = kernel.get(i, j);
            let _ = writeln!(out, "{ti},{},{},{}", number(grid.point(j)), number(v.re), number(v.im));
        }
    }
    out
}

fn parse_axis(fields: &[&str]) -> Result<Grid1D, CliError> {
    let bad = |what: &str| CliError::Validation(format!("grid CSV: invalid {what}"));
    let start: f64 = fields[0].trim().parse().map_err(|_| bad("axis start"))?;
    let step: f64 = fields[1].trim().parse().map_err(|_| bad("axis step"))?;
    let count: usize = fields[2].trim().parse().map_err(|_| bad("axis count"))?;
    Grid1D::new(start, step, count).map_err(crate::error::validation)
}

/// Reads a real grid CSV back into a distribution over (ω, b).
pub fn read_distribution_csv(text: &str) -> Result<Distribution, CliError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim_start().starts_with('#') => {}
        _ => return Err(CliError::Validation("grid CSV: missing header comment".into())),
    }
    let dims: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::Validation("grid CSV: missing axis line".into()))?
        .split(',')
        .collect();
    if dims.len() != 6 {
        return Err(CliError::Validation("grid CSV: axis line needs six fields".into()));
    }
    let grid = PhaseSpaceGrid::new(parse_axis(&dims[..3])?, parse_axis(&dims[3..])?);
    let mut values = Vec::with_capacity(grid.len());
    for (r, line) in lines.enumerate() {
        let row: Result<Vec<f64>, _> = line.split(',').map(|v| v.trim().parse::<f64>()).collect();
        let row = row.map_err(|_| CliError::Validation(format!("grid CSV: unparsable value in row {r}")))?;
        if row.len() != grid.b.count() {
            return Err(CliError::Validation(format!(
                "grid CSV: row {r} has {} values, expected {}",
                row.len(),
                grid.b.count()
            )));
        }
        values.extend(row);
    }
    Distribution::new(grid, values).map_err(crate::error::validation)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn number_format_is_17_digits() {
        assert_eq!(number(1.0), "1.0000000000000000e0");
        assert_eq!(number(-0.125), "-1.2500000000000000e-1");
        let x = 0.1 + 0.2;
        assert_eq!(number(x).parse::<f64>().unwrap(), x);
    }

    #[test]
    fn grid_csv_round_trip() {
        let g = PhaseSpaceGrid::new(Grid1D::new(-1.0, 0.5, 4).unwrap(), Grid1D::new(2.0, 0.25, 3).unwrap());
        let w = Distribution::from_fn(g, |om, b| (om * om + b).abs() / 3.0).unwrap();
        let text = distribution_csv(&w);
        assert!(text.starts_with(GRID_HEADER));
        assert!(!text.contains('\r'));
        let back = read_distribution_csv(&text).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn malformed_csv_is_a_validation_error() {
        let err = read_distribution_csv("# h\n0,1,2,0,1,2\n1,2\n").unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(read_distribution_csv("0,1\n").is_err());
    }

    #[test]
    fn json_carries_schema() {
        #[derive(Serialize)]
        struct R {
            x: f64,
        }
        let doc = json_document(&R { x: 0.5 });
        let v: serde_json::Value = serde_json::from_str(&doc).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["x"], 0.5);
    }

    #[test]
    fn staging_commits_atomically() {
        let tmp = tempfile::tempdir().unwrap();
        let target = tmp.path().join("run");
        let mut s = Staging::new(&target, false).unwrap();
        s.write("a.txt", b"hello").unwrap();
        assert!(!target.exists());
        s.commit().unwrap();
        assert_eq!(fs::read(target.join("a.txt")).unwrap(), b"hello");
        assert!(Staging::new(&target, false).is_err());
        {
            let mut s = Staging::new(&target, true).unwrap();
            s.write("b.txt", b"x").unwrap();
        }
        // dropped without commit: previous contents untouched, no staging left behind
        assert!(target.join("a.txt").exists());
        assert_eq!(fs::read_dir(tmp.path()).unwrap().count(), 1);
    }
}
