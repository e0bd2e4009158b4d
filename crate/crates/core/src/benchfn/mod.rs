//! Seeded BBOB-style test functions with a known optimum.
//!
//! Each instance shifts the landscape so its global minimum sits at a random
//! `x_opt ∈ [-4, 4]^d` with value `f_opt = 0`, and non-separable functions
//! get a random rotation. The BBOB oscillation and asymmetry warpings are
//! left out unless they are what makes the function (the Weierstrass series
//! of F16, the Katsuura product of F23).

mod functions;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::{substream, Stream};

pub use functions::{conditioning, GALLAGHER_PEAKS, WEIERSTRASS_TERMS};

/// Bounds of the benchmark search box along every axis.
pub const DOMAIN_BOUND: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FunctionId {
    F1,
    F5,
    F7,
    F8,
    F12,
    F15,
    F16,
    F21,
    F23,
    F24,
}

impl FunctionId {
    pub const ALL: [FunctionId; 10] = [
        FunctionId::F1,
        FunctionId::F5,
        FunctionId::F7,
        FunctionId::F8,
        FunctionId::F12,
        FunctionId::F15,
        FunctionId::F16,
        FunctionId::F21,
        FunctionId::F23,
        FunctionId::F24,
    ];

    pub fn number(self) -> u32 {
        match self {
            FunctionId::F1 => 1,
            FunctionId::F5 => 5,
            FunctionId::F7 => 7,
            FunctionId::F8 => 8,
            FunctionId::F12 => 12,
            FunctionId::F15 => 15,
            FunctionId::F16 => 16,
            FunctionId::F21 => 21,
            FunctionId::F23 => 23,
            FunctionId::F24 => 24,
        }
    }

    pub fn name(self) -> String {
        format!("f{}", self.number())
    }

    pub fn title(self) -> &'static str {
        match self {
            FunctionId::F1 => "Sphere",
            FunctionId::F5 => "Linear slope",
            FunctionId::F7 => "Step ellipsoid",
            FunctionId::F8 => "Rosenbrock",
            FunctionId::F12 => "Bent cigar",
            FunctionId::F15 => "Rastrigin",
            FunctionId::F16 => "Weierstrass",
            FunctionId::F21 => "Gallagher 101 peaks",
            FunctionId::F23 => "Katsuura",
            FunctionId::F24 => "Lunacek bi-Rastrigin",
        }
    }

    pub fn group(self) -> FunctionGroup {
        group_of(self)
    }

    fn is_rotated(self) -> bool {
        !matches!(self, FunctionId::F1 | FunctionId::F5 | FunctionId::F8)
    }
}

impl fmt::Display for FunctionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.number())
    }
}

impl FromStr for FunctionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .iter()
            .copied()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

impl Serialize for FunctionId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for FunctionId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FunctionGroup {
    Separable,
    LowConditioning,
    HighConditioningUnimodal,
    MultimodalAdequateStructure,
    MultimodalWeakStructure,
}

pub fn group_of(id: FunctionId) -> FunctionGroup {
    use FunctionGroup::*;
    match id {
        FunctionId::F1 | FunctionId::F5 => Separable,
        FunctionId::F7 | FunctionId::F8 => LowConditioning,
        FunctionId::F12 => HighConditioningUnimodal,
        FunctionId::F15 | FunctionId::F16 => MultimodalAdequateStructure,
        FunctionId::F21 | FunctionId::F23 | FunctionId::F24 => MultimodalWeakStructure,
    }
}

/// One Gallagher peak: location, height and diagonal curvature.
#[derive(Debug, Clone)]
pub(crate) struct Peak {
    pub(crate) location: Vec<f64>,
    pub(crate) weight: f64,
    pub(crate) curvature: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct BenchInstance {
    function_id: FunctionId,
    dim: usize,
    x_opt: Vec<f64>,
    f_opt: f64,
    rotation: Option<DMatrix<f64>>,
    instance_seed: u64,
    peaks: Vec<Peak>,
}

/// Orthogonal factor of a seeded Gaussian matrix.
fn random_rotation<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    // fix column signs so the factorization is unique
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    q
}

fn gallagher_peaks<R: Rng + ?Sized>(dim: usize, x_opt: &[f64], rng: &mut R) -> Vec<Peak> {
    let others = GALLAGHER_PEAKS - 1;
    // condition numbers 1000^(2j/99), randomly assigned to the other peaks
    let mut alphas: Vec<f64> = (0..others)
        .map(|j| 1000f64.powf(2.0 * j as f64 / (others - 1) as f64))
        .collect();
    rand::seq::SliceRandom::shuffle(alphas.as_mut_slice(), rng);

    let curvature = |alpha: f64, rng: &mut R| -> Vec<f64> {
        let mut diag = conditioning(alpha, dim);
        rand::seq::SliceRandom::shuffle(diag.as_mut_slice(), rng);
        diag.iter().map(|v| v / alpha.powf(0.25)).collect()
    };

    let mut peaks = Vec::with_capacity(GALLAGHER_PEAKS);
    let c0 = curvature(1000.0, rng);
    peaks.push(Peak {
        location: x_opt.to_vec(),
        weight: 10.0,
        curvature: c0,
    });
    for (i, alpha) in alphas.into_iter().enumerate() {
        let location = (0..dim)
            .map(|_| rng.random_range(-DOMAIN_BOUND..DOMAIN_BOUND))
            .collect();
        peaks.push(Peak {
            location,
            weight: 1.1 + 8.0 * i as f64 / (others - 1) as f64,
            curvature: curvature(alpha, rng),
        });
    }
    peaks
}

/// Build the instance for `(function_id, dim, instance_seed)`.
pub fn make_instance(function_id: FunctionId, dim: usize, instance_seed: u64) -> Result<BenchInstance> {
    if dim < 2 {
        return Err(Error::InvalidConfig(format!(
            "benchmark functions need dim >= 2, got {dim}"
        )));
    }
    let mut rng = substream(
        instance_seed,
        &[Stream::Instance as u64, function_id.number() as u64, dim as u64],
    );
    let x_opt: Vec<f64> = (0..dim).map(|_| rng.random_range(-4.0..4.0)).collect();
    let rotation = function_id
        .is_rotated()
        .then(|| random_rotation(dim, &mut rng));
    let peaks = if function_id == FunctionId::F21 {
        gallagher_peaks(dim, &x_opt, &mut rng)
    } else {
        Vec::new()
    };
    Ok(BenchInstance {
        function_id,
        dim,
        x_opt,
        f_opt: 0.0,
        rotation,
        instance_seed,
        peaks,
    })
}

impl BenchInstance {
    pub fn function_id(&self) -> FunctionId {
        self.function_id
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x_opt(&self) -> &[f64] {
        &self.x_opt
    }

    pub fn f_opt(&self) -> f64 {
        self.f_opt
    }

    pub fn rotation(&self) -> Option<&DMatrix<f64>> {
        self.rotation.as_ref()
    }

    pub fn instance_seed(&self) -> u64 {
        self.instance_seed
    }

    /// Rotated offset `R (x − x_opt)`, or the plain offset when unrotated.
    pub(crate) fn rotated_offset(&self, x: &[f64]) -> Vec<f64> {
        let u: Vec<f64> = x.iter().zip(&self.x_opt).map(|(a, b)| a - b).collect();
        match &self.rotation {
            Some(r) => (0..self.dim)
                .map(|i| (0..self.dim).map(|j| r[(i, j)] * u[j]).sum())
                .collect(),
            None => u,
        }
    }

    pub(crate) fn rotate(&self, v: &[f64]) -> Vec<f64> {
        match &self.rotation {
            Some(r) => (0..self.dim)
                .map(|i| (0..self.dim).map(|j| r[(i, j)] * v[j]).sum())
                .collect(),
            None => v.to_vec(),
        }
    }

    /// Function value at `x ∈ [-5, 5]^d`.
    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        for (index, &value) in x.iter().enumerate() {
            if !(-DOMAIN_BOUND..=DOMAIN_BOUND).contains(&value) {
                return Err(Error::OutOfDomain {
                    index,
                    value,
                    lower: -DOMAIN_BOUND,
                    upper: DOMAIN_BOUND,
                });
            }
        }
        Ok(self.f_opt + functions::raw_value(self, x))
    }
}
