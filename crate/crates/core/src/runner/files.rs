//! On-disk formats.
//!
//! Trajectories are stored one JSON object per line. Aggregates are three
//! CSV tables: `curves.csv`, `finals.csv` and `bounds.csv`.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::{AggregateReport, TrialTrajectory};
use crate::error::{Error, Result};

pub const TRAJECTORY_FILE: &str = "trajectories.jsonl";
pub const CURVES_FILE: &str = "curves.csv";
pub const FINALS_FILE: &str = "finals.csv";
pub const BOUNDS_FILE: &str = "bounds.csv";

fn create_dir(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

/// Write `trajectories` to `dir/trajectories.jsonl`, one record per line.
pub fn write_trajectories(dir: &Path, trajectories: &[TrialTrajectory]) -> Result<PathBuf> {
    create_dir(dir)?;
    let path = dir.join(TRAJECTORY_FILE);
    let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
    let mut w = BufWriter::new(file);
    for t in trajectories {
        let line = serde_json::to_string(t).map_err(|source| Error::Json {
            path: path.clone(),
            line: 0,
            source,
        })?;
        writeln!(w, "{line}").map_err(|e| Error::io(&path, e))?;
    }
    w.flush().map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

pub fn read_trajectory_file(path: &Path) -> Result<Vec<TrialTrajectory>> {
    let file = fs::File::open(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if line.trim().is_empty() {
            continue;
        }
        let t = serde_json::from_str(&line).map_err(|source| Error::Json {
            path: path.to_path_buf(),
            line: i + 1,
            source,
        })?;
        out.push(t);
    }
    Ok(out)
}

/// Read every `*.jsonl` file in `dir`, in file-name order.
pub fn read_trajectories(dir: &Path) -> Result<Vec<TrialTrajectory>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "jsonl") {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(Error::InvalidData(format!(
            "no trajectory files (*.jsonl) in {}",
            dir.display()
        )));
    }
    let mut out = Vec::new();
    for f in files {
        out.extend(read_trajectory_file(&f)?);
    }
    Ok(out)
}

pub fn write_csv<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    Ok(())
}

pub fn read_csv<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path)?;
    r.deserialize().collect::<std::result::Result<_, _>>().map_err(Error::from)
}

pub fn write_aggregate(dir: &Path, report: &AggregateReport) -> Result<()> {
    create_dir(dir)?;
    write_csv(&dir.join(CURVES_FILE), &report.curves)?;
    write_csv(&dir.join(FINALS_FILE), &report.finals)?;
    write_csv(&dir.join(BOUNDS_FILE), &report.bounds)?;
    Ok(())
}

pub fn read_aggregate(dir: &Path) -> Result<AggregateReport> {
    for name in [CURVES_FILE, FINALS_FILE, BOUNDS_FILE] {
        let p = dir.join(name);
        if !p.is_file() {
            return Err(Error::InvalidData(format!("missing aggregate table {}", p.display())));
        }
    }
    Ok(AggregateReport {
        curves: read_csv(&dir.join(CURVES_FILE))?,
        finals: read_csv(&dir.join(FINALS_FILE))?,
        bounds: read_csv(&dir.join(BOUNDS_FILE))?,
    })
}
