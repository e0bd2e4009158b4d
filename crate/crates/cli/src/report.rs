//! Plot-ready tables derived from an aggregate.
//!
//! Per function: `curve_<f>.csv` (mean and 95% half-width per step, one
//! column pair per schedule) and `violin_<f>.csv` (final normalized
//! log-regret per seed). Across functions: `average.csv`, the unweighted
//! mean curve. Schedule columns follow the portfolio order.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};

use acqsched_core::{AggregateReport, FunctionId, Schedule};

fn fmt(v: f64) -> String {
    format!("{v}")
}

fn curve_header(schedules: &[Schedule]) -> Vec<String> {
    let mut h = vec!["step".to_string()];
    for s in schedules {
        h.push(format!("{s}_mean"));
        h.push(format!("{s}_ci"));
    }
    h
}

/// Schedules present anywhere in the aggregate, in portfolio order.
fn all_schedules(agg: &AggregateReport) -> Vec<Schedule> {
    let set: BTreeSet<(usize, Schedule)> = agg.finals.iter().map(|r| (r.schedule.order(), r.schedule)).collect();
    set.into_iter().map(|(_, s)| s).collect()
}

fn steps(agg: &AggregateReport) -> usize {
    agg.curves.iter().map(|r| r.step).max().unwrap_or(0)
}

/// `(mean, half-width)` per step for one (function, schedule).
fn curve_points(agg: &AggregateReport, f: FunctionId, s: Schedule, n: usize) -> Vec<Option<(f64, f64)>> {
    let mut out = vec![None; n];
    for r in agg.curve(f, s) {
        out[r.step - 1] = Some((r.mean_norm_log_regret, r.ci_halfwidth));
    }
    out
}

fn write_curve_table(path: &Path, schedules: &[Schedule], columns: &[Vec<Option<(f64, f64)>>], n: usize) -> Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    w.write_record(curve_header(schedules))?;
    for step in 0..n {
        let mut rec = vec![(step + 1).to_string()];
        for col in columns {
            match col[step] {
                Some((m, h)) => {
                    rec.push(fmt(m));
                    rec.push(fmt(h));
                }
                None => {
                    rec.push(String::new());
                    rec.push(String::new());
                }
            }
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn write_violin(path: &Path, agg: &AggregateReport, f: FunctionId, schedules: &[Schedule]) -> Result<()> {
    let seeds: BTreeSet<u64> = agg.finals.iter().filter(|r| r.function == f).map(|r| r.seed).collect();
    let mut w = csv::Writer::from_path(path).with_context(|| format!("cannot write {}", path.display()))?;
    let mut header = vec!["seed".to_string()];
    header.extend(schedules.iter().map(|s| s.to_string()));
    w.write_record(&header)?;
    for seed in seeds {
        let mut rec = vec![seed.to_string()];
        for s in schedules {
            let v = agg
                .finals
                .iter()
                .find(|r| r.function == f && r.schedule == *s && r.seed == seed)
                .map(|r| fmt(r.final_norm_log_regret))
                .unwrap_or_default();
            rec.push(v);
        }
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

/// Write every plot-data file into `out_dir`; returns the paths written.
pub fn write_plot_data(agg: &AggregateReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir).with_context(|| format!("cannot create {}", out_dir.display()))?;
    let functions = agg.functions();
    let schedules = all_schedules(agg);
    let n = steps(agg);
    let mut written = Vec::new();

    // per schedule and step: function means and half-widths
    let mut pooled: Vec<Vec<Vec<(f64, f64)>>> = vec![vec![Vec::new(); n]; schedules.len()];
    for &f in &functions {
        let columns: Vec<_> = schedules.iter().map(|&s| curve_points(agg, f, s, n)).collect();
        for (si, col) in columns.iter().enumerate() {
            for (step, p) in col.iter().enumerate() {
                if let Some(p) = p {
                    pooled[si][step].push(*p);
                }
            }
        }
        let path = out_dir.join(format!("curve_{f}.csv"));
        write_curve_table(&path, &schedules, &columns, n)?;
        written.push(path);

        let path = out_dir.join(format!("violin_{f}.csv"));
        write_violin(&path, agg, f, &schedules)?;
        written.push(path);
    }

    // Unweighted mean over functions; the half-width treats the function
    // means as independent: sqrt(Σ h²) / F.
    let average: Vec<Vec<Option<(f64, f64)>>> = pooled
        .iter()
        .map(|by_step| {
            by_step
                .iter()
                .map(|pts| {
                    (!pts.is_empty()).then(|| {
                        let k = pts.len() as f64;
                        let m = pts.iter().map(|p| p.0).sum::<f64>() / k;
                        let h = pts.iter().map(|p| p.1 * p.1).sum::<f64>().sqrt() / k;
                        (m, h)
                    })
                })
                .collect()
        })
        .collect();
    let path = out_dir.join("average.csv");
    write_curve_table(&path, &schedules, &average, n)?;
    written.push(path);
    Ok(written)
}
