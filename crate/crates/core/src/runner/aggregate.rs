//! Log-regret curves normalized per function, with 95% intervals over seeds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::TrialTrajectory;
use crate::benchfn::FunctionId;
use crate::error::{Error, Result};
use crate::schedule::Schedule;
use crate::stats::{ci95_halfwidth, mean};

/// Regret floor applied before taking the logarithm.
pub const REGRET_CLAMP: f64 = 1e-12;

/// `log10(max(incumbent − f_opt, clamp))` for each surrogate-based step; the
/// design phase is not included.
pub fn log_regret(trajectory: &TrialTrajectory, clamp: f64) -> Vec<f64> {
    trajectory
        .incumbent
        .iter()
        .map(|inc| (inc - trajectory.f_opt).max(clamp).log10())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationBounds {
    pub function: FunctionId,
    pub min_log_regret: f64,
    pub max_log_regret: f64,
    /// Set when every value is equal; all normalized values are then 0.
    pub degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveRow {
    pub function: FunctionId,
    pub schedule: Schedule,
    pub step: usize,
    pub mean_norm_log_regret: f64,
    pub ci_halfwidth: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FinalRow {
    pub function: FunctionId,
    pub schedule: Schedule,
    pub seed: u64,
    pub final_norm_log_regret: f64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct AggregateReport {
    pub bounds: Vec<NormalizationBounds>,
    pub curves: Vec<CurveRow>,
    pub finals: Vec<FinalRow>,
}

impl AggregateReport {
    pub fn functions(&self) -> Vec<FunctionId> {
        self.bounds.iter().map(|b| b.function).collect()
    }

    /// Schedules present for `function`, in portfolio order.
    pub fn schedules(&self, function: FunctionId) -> Vec<Schedule> {
        let mut s: Vec<Schedule> = self
            .finals
            .iter()
            .filter(|r| r.function == function)
            .map(|r| r.schedule)
            .collect();
        s.sort_by_key(|s| s.order());
        s.dedup();
        s
    }

    pub fn curve(&self, function: FunctionId, schedule: Schedule) -> Vec<&CurveRow> {
        self.curves
            .iter()
            .filter(|r| r.function == function && r.schedule == schedule)
            .collect()
    }

    pub fn final_values(&self, function: FunctionId, schedule: Schedule) -> Vec<f64> {
        self.finals
            .iter()
            .filter(|r| r.function == function && r.schedule == schedule)
            .map(|r| r.final_norm_log_regret)
            .collect()
    }
}

/// Normalize each function's log-regrets to `[0, 1]` using the range over
/// every schedule, seed and step passed in, then summarize per step.
///
/// Trajectories that did not complete are left out. All trajectories must
/// share the same dimension and budget.
pub fn aggregate(trajectories: &[TrialTrajectory]) -> Result<AggregateReport> {
    let complete: Vec<&TrialTrajectory> = trajectories.iter().filter(|t| t.is_complete()).collect();
    let Some(first) = complete.first() else {
        return Err(Error::InvalidData("no completed trajectories to aggregate".into()));
    };
    for t in &complete {
        if t.dim != first.dim {
            return Err(Error::InvalidData(format!(
                "mixed dimensions {} and {} cannot be aggregated",
                first.dim, t.dim
            )));
        }
        if t.bo_evals != first.bo_evals {
            return Err(Error::InvalidData(format!(
                "mixed budgets {} and {} cannot be aggregated",
                first.bo_evals, t.bo_evals
            )));
        }
    }

    // function -> schedule -> seed -> log-regret curve
    let mut grouped: BTreeMap<FunctionId, BTreeMap<(usize, Schedule), BTreeMap<u64, Vec<f64>>>> =
        BTreeMap::new();
    for t in &complete {
        grouped
            .entry(t.function)
            .or_default()
            .entry((t.schedule.order(), t.schedule))
            .or_default()
            .insert(t.seed, log_regret(t, REGRET_CLAMP));
    }

    let steps = first.bo_evals;
    let mut report = AggregateReport::default();
    for (function, by_schedule) in &grouped {
        let all = by_schedule.values().flat_map(|s| s.values()).flatten();
        let (lo, hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
        let degenerate = !(hi > lo);
        let normalize = |v: f64| if degenerate { 0.0 } else { ((v - lo) / (hi - lo)).clamp(0.0, 1.0) };
        report.bounds.push(NormalizationBounds {
            function: *function,
            min_log_regret: lo,
            max_log_regret: hi,
            degenerate,
        });

        for ((_, schedule), by_seed) in by_schedule {
            for step in 0..steps {
                let column: Vec<f64> = by_seed.values().map(|c| normalize(c[step])).collect();
                report.curves.push(CurveRow {
                    function: *function,
                    schedule: *schedule,
                    step: step + 1,
                    mean_norm_log_regret: mean(&column),
                    ci_halfwidth: ci95_halfwidth(&column),
                });
            }
            for (seed, curve) in by_seed {
                report.finals.push(FinalRow {
                    function: *function,
                    schedule: *schedule,
                    seed: *seed,
                    final_norm_log_regret: normalize(curve[steps - 1]),
                });
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::acquisition::AcquisitionKind;

    pub(crate) fn fake(function: FunctionId, schedule: Schedule, seed: u64, inc: &[f64]) -> TrialTrajectory {
        TrialTrajectory {
            function,
            schedule,
            seed,
            dim: 2,
            doe_size: 2,
            bo_evals: inc.len(),
            f_opt: 0.0,
            doe_x: vec![vec![0.0, 0.0]; 2],
            doe_y: vec![inc[0]; 2],
            initial_incumbent: inc[0],
            af: vec![AcquisitionKind::Ei; inc.len()],
            x: vec![vec![0.0, 0.0]; inc.len()],
            y: inc.to_vec(),
            incumbent: inc.to_vec(),
            final_incumbent: *inc.last().unwrap(),
            failure: None,
        }
    }

    #[test]
    fn log_regret_values() {
        let t = fake(FunctionId::F1, Schedule::StaticEi, 0, &[10.0, 1.0, 0.1]);
        let lr = log_regret(&t, REGRET_CLAMP);
        assert_eq!(lr[0], 1.0);
        assert_eq!(lr[1], 0.0);
        assert!((lr[2] + 1.0).abs() < 1e-15);
        let t = fake(FunctionId::F1, Schedule::StaticEi, 0, &[1.0, 1.0]);
        assert_eq!(log_regret(&t, REGRET_CLAMP), vec![0.0, 0.0]);
        let t = fake(FunctionId::F1, Schedule::StaticEi, 0, &[1.0, 0.0]);
        assert_eq!(log_regret(&t, REGRET_CLAMP)[1], -12.0);
    }

    #[test]
    fn normalized_span_is_unit() {
        let t = fake(FunctionId::F1, Schedule::StaticEi, 0, &[1.0, 1e-6, 0.0]);
        let t2 = fake(FunctionId::F1, Schedule::StaticEi, 1, &[1.0, 1e-3, 1e-9]);
        let r = aggregate(&[t, t2]).unwrap();
        assert_eq!(r.bounds[0].min_log_regret, -12.0);
        assert_eq!(r.bounds[0].max_log_regret, 0.0);
        let means: Vec<f64> = r.curves.iter().map(|c| c.mean_norm_log_regret).collect();
        assert_eq!(means[0], 1.0);
        assert!(r.finals.iter().any(|f| f.final_norm_log_regret == 0.0));
    }

    #[test]
    fn identical_seeds_have_zero_width() {
        let a = fake(FunctionId::F1, Schedule::StaticEi, 0, &[1.0, 0.1]);
        let b = fake(FunctionId::F1, Schedule::StaticEi, 1, &[1.0, 0.1]);
        let r = aggregate(&[a, b]).unwrap();
        assert!(r.curves.iter().all(|c| c.ci_halfwidth == 0.0));
    }

    #[test]
    fn two_seed_finals() {
        let a = fake(FunctionId::F1, Schedule::StaticEi, 0, &[1.0, 1e-4]);
        let b = fake(FunctionId::F1, Schedule::StaticEi, 1, &[1.0, 1.0]);
        let r = aggregate(&[a, b]).unwrap();
        let last = r.curves.last().unwrap();
        assert_eq!(last.mean_norm_log_regret, 0.5);
        assert!((last.ci_halfwidth - 0.98).abs() < 1e-12);
    }

    #[test]
    fn degenerate_bounds_flagged() {
        let a = fake(FunctionId::F5, Schedule::StaticPi, 0, &[0.0, 0.0]);
        let b = fake(FunctionId::F5, Schedule::StaticPi, 1, &[0.0, 0.0]);
        let r = aggregate(&[a, b]).unwrap();
        assert!(r.bounds[0].degenerate);
        assert!(r.finals.iter().all(|f| f.final_norm_log_regret == 0.0));
    }

    #[test]
    fn subset_uses_its_own_bounds() {
        let ei = fake(FunctionId::F1, Schedule::StaticEi, 0, &[1.0, 1e-2]);
        let pi = fake(FunctionId::F1, Schedule::StaticPi, 0, &[1.0, 1e-8]);
        let full = aggregate(&[ei.clone(), pi]).unwrap();
        let sub = aggregate(&[ei.clone()]).unwrap();
        assert_eq!(full.bounds[0].min_log_regret, -8.0);
        assert_eq!(sub.bounds[0].min_log_regret, -2.0);
        assert_eq!(sub, aggregate(&[ei]).unwrap());
    }

    #[test]
    fn mixed_dims_rejected() {
        let a = fake(FunctionId::F1, Schedule::StaticEi, 0, &[1.0]);
        let mut b = fake(FunctionId::F1, Schedule::StaticEi, 1, &[1.0]);
        b.dim = 3;
        assert!(aggregate(&[a, b]).is_err());
        assert!(aggregate(&[]).is_err());
    }
}
