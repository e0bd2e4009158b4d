//! Acquisition-function schedules: which AF drives each surrogate-based step.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::acquisition::AcquisitionKind;
use crate::error::{Error, Result};
use crate::rng::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Schedule {
    StaticEi,
    StaticPi,
    Random,
    RoundRobin,
    /// EI for the first `percent`% of the surrogate-based budget, PI after.
    ExploreExploit { percent: u32 },
}

impl Schedule {
    /// The portfolio in its canonical reporting order.
    pub const ALL: [Schedule; 7] = [
        Schedule::StaticEi,
        Schedule::StaticPi,
        Schedule::Random,
        Schedule::RoundRobin,
        Schedule::ExploreExploit { percent: 25 },
        Schedule::ExploreExploit { percent: 50 },
        Schedule::ExploreExploit { percent: 75 },
    ];

    pub const NAMES: &'static str = "ei|pi|random|round_robin|ee25|ee50|ee75";

    pub fn name(self) -> String {
        match self {
            Schedule::StaticEi => "ei".into(),
            Schedule::StaticPi => "pi".into(),
            Schedule::Random => "random".into(),
            Schedule::RoundRobin => "round_robin".into(),
            Schedule::ExploreExploit { percent } => format!("ee{percent}"),
        }
    }

    /// Position in [`Schedule::ALL`]; anything else sorts last.
    pub fn order(self) -> usize {
        Self::ALL
            .iter()
            .position(|s| *s == self)
            .unwrap_or(Self::ALL.len())
    }

    pub fn is_switching(self) -> bool {
        matches!(self, Schedule::ExploreExploit { .. })
    }
}

impl fmt::Display for Schedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Schedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|sched| sched.name() == s)
            .ok_or_else(|| Error::UnknownSchedule(s.to_string()))
    }
}

impl Serialize for Schedule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for Schedule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A schedule bound to a surrogate-based budget `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleSpec {
    pub schedule: Schedule,
    pub total_bo_evals: usize,
}

impl ScheduleSpec {
    pub fn new(schedule: Schedule, total_bo_evals: usize) -> Result<Self> {
        if total_bo_evals == 0 {
            return Err(Error::InvalidConfig("schedule budget must be at least 1".into()));
        }
        if let Schedule::ExploreExploit { percent } = schedule {
            if percent == 0 || percent >= 100 {
                return Err(Error::InvalidConfig(format!(
                    "switch fraction {percent}% must lie strictly between 0 and 100"
                )));
            }
        }
        Ok(Self {
            schedule,
            total_bo_evals,
        })
    }

    /// Number of leading EI steps for a switching schedule: `floor(τ·T)`.
    pub fn switch_index(&self) -> Option<usize> {
        match self.schedule {
            Schedule::ExploreExploit { percent } => {
                Some(percent as usize * self.total_bo_evals / 100)
            }
            _ => None,
        }
    }

    /// AF for 1-based `step`. `coin_seed` feeds the random schedule only; the
    /// coin for a step is a pure function of `(coin_seed, step)`.
    pub fn kind_at(&self, step: usize, coin_seed: u64) -> Result<AcquisitionKind> {
        if step == 0 || step > self.total_bo_evals {
            return Err(Error::StepOutOfRange {
                step,
                total: self.total_bo_evals,
            });
        }
        Ok(match self.schedule {
            Schedule::StaticEi => AcquisitionKind::Ei,
            Schedule::StaticPi => AcquisitionKind::Pi,
            Schedule::RoundRobin if step % 2 == 1 => AcquisitionKind::Ei,
            Schedule::RoundRobin => AcquisitionKind::Pi,
            Schedule::Random => {
                if derive_seed(coin_seed, &[step as u64]) >> 63 == 0 {
                    AcquisitionKind::Ei
                } else {
                    AcquisitionKind::Pi
                }
            }
            Schedule::ExploreExploit { .. } => {
                if step <= self.switch_index().unwrap_or(0) {
                    AcquisitionKind::Ei
                } else {
                    AcquisitionKind::Pi
                }
            }
        })
    }

    pub fn full_trace(&self, coin_seed: u64) -> ScheduleTrace {
        let kinds = (1..=self.total_bo_evals)
            .map(|t| self.kind_at(t, coin_seed).expect("step within budget"))
            .collect();
        ScheduleTrace { kinds }
    }
}

/// The AF used at each step, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleTrace {
    pub kinds: Vec<AcquisitionKind>,
}

impl ScheduleTrace {
    pub fn len(&self) -> usize {
        self.kinds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kinds.is_empty()
    }

    pub fn count(&self, kind: AcquisitionKind) -> usize {
        self.kinds.iter().filter(|k| **k == kind).count()
    }
}
