//! Expected improvement and probability of improvement for minimization.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::Error;
use crate::gp::Posterior;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AcquisitionKind {
    #[serde(rename = "EI")]
    Ei,
    #[serde(rename = "PI")]
    Pi,
}

impl AcquisitionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            AcquisitionKind::Ei => "EI",
            AcquisitionKind::Pi => "PI",
        }
    }
}

impl fmt::Display for AcquisitionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for AcquisitionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "EI" | "ei" => Ok(AcquisitionKind::Ei),
            "PI" | "pi" => Ok(AcquisitionKind::Pi),
            other => Err(Error::InvalidData(format!("unknown acquisition `{other}`"))),
        }
    }
}

/// Improvement of a posterior over the incumbent: `delta = y_min − μ(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementContext {
    pub y_min: f64,
    pub delta: f64,
    pub sigma: f64,
}

impl ImprovementContext {
    pub fn new(posterior: Posterior, y_min: f64) -> Self {
        Self {
            y_min,
            delta: y_min - posterior.mean,
            sigma: posterior.std.max(0.0),
        }
    }

    /// Context from an improvement and spread directly (`y_min` set to `delta`
    /// against a zero mean).
    pub fn from_delta(delta: f64, sigma: f64) -> Self {
        Self {
            y_min: delta,
            delta,
            sigma,
        }
    }
}

/// Standard normal CDF.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * erfc(-z * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    (-0.5 * z * z).exp() / (2.0 * PI).sqrt()
}

/// `Φ(Δ/σ)`; at `σ = 0` the limit `1{Δ > 0}`.
pub fn pi(ctx: &ImprovementContext) -> f64 {
    if ctx.sigma > 0.0 {
        std_normal_cdf(ctx.delta / ctx.sigma)
    } else if ctx.delta > 0.0 {
        1.0
    } else {
        0.0
    }
}

/// `ΔΦ(Δ/σ) + σφ(Δ/σ)`, exactly zero at `σ = 0`.
pub fn ei(ctx: &ImprovementContext) -> f64 {
    if !(ctx.sigma > 0.0) {
        return 0.0;
    }
    let z = ctx.delta / ctx.sigma;
    let v = ctx.delta * std_normal_cdf(z) + ctx.sigma * std_normal_pdf(z);
    // cancellation for very negative z can dip a hair below zero
    v.max(0.0)
}

pub fn evaluate(kind: AcquisitionKind, posterior: Posterior, y_min: f64) -> f64 {
    let ctx = ImprovementContext::new(posterior, y_min);
    match kind {
        AcquisitionKind::Ei => ei(&ctx),
        AcquisitionKind::Pi => pi(&ctx),
    }
}
