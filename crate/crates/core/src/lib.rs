//! Bayesian optimization with acquisition-function schedules.
//!
//! The loop fits a Matérn 5/2 Gaussian process to every observation, picks
//! expected improvement or probability of improvement according to a
//! [`Schedule`], maximizes it over the search box and evaluates the proposal.
//! The [`runner`] wraps that loop into seeded experiment grids over a set of
//! BBOB-style test functions and turns the trajectories into normalized
//! log-regret statistics.

pub mod acquisition;
pub mod afopt;
pub mod benchfn;
pub mod error;
pub mod gp;
pub mod rng;
pub mod runner;
pub mod schedule;
pub mod stats;

pub use acquisition::{AcquisitionKind, ImprovementContext};
pub use afopt::{initial_design, maximize_af, BoxDomain, DesignSpec, Proposal};
pub use benchfn::{make_instance, BenchInstance, FunctionGroup, FunctionId};
pub use error::{Error, Result};
pub use gp::{GpModel, KernelParams, Posterior};
pub use runner::{
    aggregate, log_regret, run_grid, run_trial, AggregateReport, ExperimentConfig,
    TrialTrajectory,
};
pub use schedule::{Schedule, ScheduleSpec, ScheduleTrace};
