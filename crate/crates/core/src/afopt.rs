//! Initial designs and inner-loop acquisition maximization.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::acquisition::{self, AcquisitionKind};
use crate::error::{Error, Result};
use crate::gp::GpModel;

/// Random candidates scored before local refinement.
pub const N_CANDIDATES: usize = 1024;
/// Best candidates handed to the pattern search.
pub const N_REFINE_STARTS: usize = 5;
const INITIAL_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-4;
const MAX_REFINE_EVALS: usize = 600;

/// Axis-aligned search box.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDomain {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl BoxDomain {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.is_empty() || lower.len() != upper.len() {
            return Err(Error::InvalidConfig(format!(
                "domain bounds have lengths {} and {}",
                lower.len(),
                upper.len()
            )));
        }
        if lower.iter().zip(&upper).any(|(l, u)| !(l < u)) {
            return Err(Error::InvalidConfig(
                "domain lower bound must be below upper bound".into(),
            ));
        }
        Ok(Self { lower, upper })
    }

    /// The `[-5, 5]^d` box used by the benchmark functions.
    pub fn bbob(dim: usize) -> Self {
        Self {
            lower: vec![-5.0; dim],
            upper: vec![5.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (l, u))| *l <= *v && *v <= *u)
    }

    pub fn to_unit(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(v, (l, u))| (v - l) / (u - l))
            .collect()
    }

    /// Map from the unit cube, clamping so rounding never leaves the box.
    pub fn from_unit(&self, u: &[f64]) -> Vec<f64> {
        u.iter()
            .zip(self.lower.iter().zip(&self.upper))
            .map(|(t, (l, h))| (l + t * (h - l)).clamp(*l, *h))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignMethod {
    LatinHypercube,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DesignSpec {
    pub n_points: usize,
    pub method: DesignMethod,
}

impl DesignSpec {
    pub fn latin_hypercube(n_points: usize) -> Self {
        Self {
            n_points,
            method: DesignMethod::LatinHypercube,
        }
    }
}

/// Latin-hypercube sample: along every axis each of the `n` equal-width
/// strata holds exactly one point.
pub fn initial_design<R: Rng + ?Sized>(
    spec: &DesignSpec,
    domain: &BoxDomain,
    rng: &mut R,
) -> Vec<Vec<f64>> {
    let n = spec.n_points;
    let d = domain.dim();
    let mut unit = vec![vec![0.0; d]; n];
    let mut strata: Vec<usize> = (0..n).collect();
    for j in 0..d {
        strata.shuffle(rng);
        for (i, s) in strata.iter().enumerate() {
            unit[i][j] = (*s as f64 + rng.random::<f64>()) / n as f64;
        }
    }
    unit.iter().map(|u| domain.from_unit(u)).collect()
}

/// Point chosen by [`maximize_af`] and its acquisition value.
#[derive(Debug, Clone, PartialEq)]
pub struct Proposal {
    pub point: Vec<f64>,
    pub value: f64,
}

struct Scorer<'a> {
    kind: AcquisitionKind,
    model: &'a GpModel,
    y_min: f64,
}

impl Scorer<'_> {
    fn score(&self, u: &[f64]) -> f64 {
        match self.model.predict(u) {
            Ok(post) => {
                let v = acquisition::evaluate(self.kind, post, self.y_min);
                if v.is_nan() {
                    f64::NEG_INFINITY
                } else {
                    v
                }
            }
            Err(_) => f64::NEG_INFINITY,
        }
    }

    /// Coordinate pattern search in the unit cube with a halving step.
    fn refine(&self, mut u: Vec<f64>, mut best: f64) -> (Vec<f64>, f64) {
        let mut step = INITIAL_STEP;
        let mut evals = 0;
        while step >= MIN_STEP && evals < MAX_REFINE_EVALS {
            let mut improved = false;
            for i in 0..u.len() {
                for dir in [1.0, -1.0] {
                    let moved = (u[i] + dir * step).clamp(0.0, 1.0);
                    if moved == u[i] {
                        continue;
                    }
                    let old = u[i];
                    u[i] = moved;
                    let v = self.score(&u);
                    evals += 1;
                    if v > best {
                        best = v;
                        improved = true;
                    } else {
                        u[i] = old;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        (u, best)
    }
}

/// Maximize the acquisition over `domain`: score uniform random candidates,
/// then pattern-search from the best few. Ties go to the lowest candidate
/// index, so a flat surface returns the first candidate.
pub fn maximize_af<R: Rng + ?Sized>(
    kind: AcquisitionKind,
    model: &GpModel,
    y_min: f64,
    domain: &BoxDomain,
    rng: &mut R,
) -> Result<Proposal> {
    let d = domain.dim();
    if model.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: model.dim(),
        });
    }
    let scorer = Scorer { kind, model, y_min };

    let candidates: Vec<Vec<f64>> = (0..N_CANDIDATES)
        .map(|_| (0..d).map(|_| rng.random::<f64>()).collect())
        .collect();
    let scores: Vec<f64> = candidates.iter().map(|c| scorer.score(c)).collect();

    let mut ranked: Vec<usize> = (0..N_CANDIDATES).collect();
    ranked.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b)));

    let mut best_index = ranked[0];
    let mut best = (candidates[best_index].clone(), scores[best_index]);
    for &idx in ranked.iter().take(N_REFINE_STARTS) {
        let (u, v) = scorer.refine(candidates[idx].clone(), scores[idx]);
        if v > best.1 || (v == best.1 && idx < best_index) {
            best_index = idx;
            best = (u, v);
        }
    }

    Ok(Proposal {
        point: domain.from_unit(&best.0),
        value: best.1,
    })
}
