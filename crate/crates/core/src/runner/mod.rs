//! The Bayesian-optimization loop and the experiment grid around it.

mod aggregate;
mod baseline;
pub mod files;
mod grid;
mod trial;

use serde::{Deserialize, Serialize};

pub use aggregate::{
    aggregate, log_regret, AggregateReport, CurveRow, FinalRow, NormalizationBounds,
    REGRET_CLAMP,
};
pub use baseline::random_search;
pub use grid::{run_grid, Cell};
pub use trial::{run_trial, StepRecord, TrialFailure, TrialTrajectory};

use crate::benchfn::FunctionId;
use crate::error::{Error, Result};
use crate::gp::DEFAULT_RESTARTS;
use crate::schedule::Schedule;

/// One grid of trials: every function × schedule × seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dim: usize,
    pub doe_size: usize,
    pub bo_evals: usize,
    pub seeds: Vec<u64>,
    pub functions: Vec<FunctionId>,
    pub schedules: Vec<Schedule>,
    pub gp_restarts: usize,
}

impl ExperimentConfig {
    /// Protocol defaults for `dim`: `3d` design points and `20d`
    /// surrogate-based evaluations.
    pub fn protocol(dim: usize) -> Self {
        Self {
            dim,
            doe_size: 3 * dim,
            bo_evals: 20 * dim,
            seeds: vec![0],
            functions: vec![FunctionId::F1],
            schedules: Schedule::ALL.to_vec(),
            gp_restarts: DEFAULT_RESTARTS,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.dim < 2 {
            return fail("dim must be at least 2");
        }
        if self.doe_size < 2 {
            return fail("doe size must be at least 2");
        }
        if self.bo_evals < 1 {
            return fail("evals must be at least 1");
        }
        if self.seeds.is_empty() {
            return fail("at least one seed is required");
        }
        if self.functions.is_empty() {
            return fail("at least one function is required");
        }
        if self.schedules.is_empty() {
            return fail("at least one schedule is required");
        }
        if self.gp_restarts < 1 {
            return fail("gp restarts must be at least 1");
        }
        Ok(())
    }

    pub fn n_cells(&self) -> usize {
        self.functions.len() * self.schedules.len() * self.seeds.len()
    }
}
