use rayon::prelude::*;

use super::{run_trial, ExperimentConfig, TrialFailure, TrialTrajectory};
use crate::benchfn::FunctionId;
use crate::error::{Error, Result};
use crate::schedule::Schedule;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub function: FunctionId,
    pub schedule: Schedule,
    pub seed: u64,
}

fn canonical_key(t: &TrialTrajectory) -> (u32, usize, u64) {
    (t.function.number(), t.schedule.order(), t.seed)
}

fn failed_cell(cell: Cell, config: &ExperimentConfig, message: String) -> TrialTrajectory {
    TrialTrajectory {
        function: cell.function,
        schedule: cell.schedule,
        seed: cell.seed,
        dim: config.dim,
        doe_size: config.doe_size,
        bo_evals: config.bo_evals,
        f_opt: 0.0,
        doe_x: Vec::new(),
        doe_y: Vec::new(),
        initial_incumbent: f64::INFINITY,
        af: Vec::new(),
        x: Vec::new(),
        y: Vec::new(),
        incumbent: Vec::new(),
        final_incumbent: f64::INFINITY,
        failure: Some(TrialFailure { step: 0, message }),
    }
}

/// Run every cell of the grid on `workers` threads. Cells are independent
/// and deterministic, and the result is sorted by (function, schedule,
/// seed), so the output does not depend on `workers`. A failing cell is
/// recorded in its trajectory rather than aborting the grid.
pub fn run_grid(config: &ExperimentConfig, workers: usize) -> Result<Vec<TrialTrajectory>> {
    config.validate()?;
    let mut cells = Vec::with_capacity(config.n_cells());
    for &function in &config.functions {
        for &schedule in &config.schedules {
            for &seed in &config.seeds {
                cells.push(Cell {
                    function,
                    schedule,
                    seed,
                });
            }
        }
    }

    let run = |cell: &Cell| {
        run_trial(cell.function, cell.schedule, cell.seed, config)
            .unwrap_or_else(|e| failed_cell(*cell, config, e.to_string()))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?;
    let mut out: Vec<TrialTrajectory> = pool.install(|| cells.par_iter().map(run).collect());
    out.sort_by_key(canonical_key);
    out.dedup_by_key(|t| canonical_key(t));
    Ok(out)
}
