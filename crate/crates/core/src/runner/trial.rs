use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::ExperimentConfig;
use crate::acquisition::AcquisitionKind;
use crate::afopt::{initial_design, maximize_af, BoxDomain, DesignSpec};
use crate::benchfn::{make_instance, FunctionId};
use crate::error::Result;
use crate::gp::GpModel;
use crate::rng::{derive_seed, substream, Stream};
use crate::schedule::{Schedule, ScheduleSpec};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialFailure {
    /// 1-based surrogate-based step at which the trial stopped.
    pub step: usize,
    pub message: String,
}

/// Everything observed in one `(function, schedule, seed)` trial. Per-step
/// data is stored column-wise; entry `t` belongs to step `t + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialTrajectory {
    pub function: FunctionId,
    pub schedule: Schedule,
    pub seed: u64,
    pub dim: usize,
    pub doe_size: usize,
    pub bo_evals: usize,
    pub f_opt: f64,
    pub doe_x: Vec<Vec<f64>>,
    pub doe_y: Vec<f64>,
    /// Best design value, before any surrogate-based step.
    pub initial_incumbent: f64,
    pub af: Vec<AcquisitionKind>,
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub incumbent: Vec<f64>,
    pub final_incumbent: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<TrialFailure>,
}

/// Borrowed view of one step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepRecord<'a> {
    pub step: usize,
    pub af: AcquisitionKind,
    pub x: &'a [f64],
    pub y: f64,
    pub incumbent: f64,
}

impl TrialTrajectory {
    pub fn is_complete(&self) -> bool {
        self.failure.is_none() && self.incumbent.len() == self.bo_evals
    }

    pub fn steps(&self) -> impl Iterator<Item = StepRecord<'_>> {
        (0..self.y.len()).map(move |i| StepRecord {
            step: i + 1,
            af: self.af[i],
            x: &self.x[i],
            y: self.y[i],
            incumbent: self.incumbent[i],
        })
    }
}

fn design_matrix(points: &[Vec<f64>], domain: &BoxDomain) -> DMatrix<f64> {
    let d = domain.dim();
    DMatrix::from_fn(points.len(), d, |i, j| domain.to_unit(&points[i])[j])
}

/// Run the design phase plus `bo_evals` surrogate-based steps.
///
/// The design, the GP restarts and the AF candidates draw from substreams
/// keyed by seed, function and step only, so schedules that agree on their
/// first `k` acquisitions produce identical trajectories through step `k`.
/// A GP failure stops the trial and is recorded in `failure`.
pub fn run_trial(
    function: FunctionId,
    schedule: Schedule,
    seed: u64,
    config: &ExperimentConfig,
) -> Result<TrialTrajectory> {
    config.validate()?;
    let spec = ScheduleSpec::new(schedule, config.bo_evals)?;
    let instance = make_instance(function, config.dim, seed)?;
    let domain = BoxDomain::bbob(config.dim);
    let fid = function.number() as u64;

    let mut design_rng = substream(seed, &[Stream::Design as u64]);
    let doe_x = initial_design(
        &DesignSpec::latin_hypercube(config.doe_size),
        &domain,
        &mut design_rng,
    );
    let doe_y = doe_x
        .iter()
        .map(|p| instance.evaluate(p))
        .collect::<Result<Vec<_>>>()?;
    let initial_incumbent = doe_y.iter().copied().fold(f64::INFINITY, f64::min);

    let coin_seed = derive_seed(seed, &[Stream::ScheduleCoin as u64, fid]);
    let mut xs = doe_x.clone();
    let mut ys = doe_y.clone();
    let mut best = initial_incumbent;
    let mut traj = TrialTrajectory {
        function,
        schedule,
        seed,
        dim: config.dim,
        doe_size: config.doe_size,
        bo_evals: config.bo_evals,
        f_opt: instance.f_opt(),
        doe_x,
        doe_y,
        initial_incumbent,
        af: Vec::with_capacity(config.bo_evals),
        x: Vec::with_capacity(config.bo_evals),
        y: Vec::with_capacity(config.bo_evals),
        incumbent: Vec::with_capacity(config.bo_evals),
        final_incumbent: initial_incumbent,
        failure: None,
    };

    for step in 1..=config.bo_evals {
        let t = step as u64;
        let mut gp_rng = substream(seed, &[Stream::GpRestarts as u64, fid, t]);
        let model = match GpModel::fit(
            design_matrix(&xs, &domain),
            &DVector::from_column_slice(&ys),
            config.gp_restarts,
            &mut gp_rng,
        ) {
            Ok(m) => m,
            Err(e) => {
                traj.failure = Some(TrialFailure {
                    step,
                    message: e.to_string(),
                });
                break;
            }
        };
        let kind = spec.kind_at(step, coin_seed)?;
        let mut af_rng = substream(seed, &[Stream::AfCandidates as u64, fid, t]);
        let proposal = maximize_af(kind, &model, best, &domain, &mut af_rng)?;
        let y = instance.evaluate(&proposal.point)?;
        best = best.min(y);

        traj.af.push(kind);
        traj.x.push(proposal.point.clone());
        traj.y.push(y);
        traj.incumbent.push(best);
        xs.push(proposal.point);
        ys.push(y);
    }
    traj.final_incumbent = best;
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(bo_evals: usize) -> ExperimentConfig {
        ExperimentConfig {
            dim: 2,
            doe_size: 4,
            bo_evals,
            seeds: vec![0],
            functions: vec![FunctionId::F1],
            schedules: vec![Schedule::StaticEi],
            gp_restarts: 2,
        }
    }

    #[test]
    fn one_step_trial() {
        let mut c = small(1);
        c.doe_size = 2;
        let t = run_trial(FunctionId::F1, Schedule::StaticEi, 3, &c).unwrap();
        assert_eq!(t.y.len(), 1);
        assert!(t.is_complete());
        let doe_min = t.doe_y.iter().copied().fold(f64::INFINITY, f64::min);
        assert_eq!(t.initial_incumbent, doe_min);
        assert!(t.final_incumbent <= doe_min);
    }

    #[test]
    fn incumbent_is_monotone() {
        let t = run_trial(FunctionId::F15, Schedule::Random, 1, &small(6)).unwrap();
        let mut prev = t.initial_incumbent;
        for s in t.steps() {
            assert!(s.incumbent <= prev);
            assert_eq!(s.incumbent, prev.min(s.y));
            prev = s.incumbent;
        }
        assert_eq!(t.final_incumbent, prev);
    }

    #[test]
    fn design_shared_across_schedules() {
        let c = small(2);
        let a = run_trial(FunctionId::F16, Schedule::StaticPi, 5, &c).unwrap();
        let b = run_trial(FunctionId::F16, Schedule::RoundRobin, 5, &c).unwrap();
        assert_eq!(a.doe_x, b.doe_x);
        assert_eq!(a.doe_y, b.doe_y);
    }

    #[test]
    fn trial_is_deterministic() {
        let c = small(3);
        let a = run_trial(FunctionId::F8, Schedule::Random, 2, &c).unwrap();
        let b = run_trial(FunctionId::F8, Schedule::Random, 2, &c).unwrap();
        assert_eq!(a, b);
    }
}
