//! Matérn 5/2 covariance with one length-scale per input dimension.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest admissible noise variance.
pub const NOISE_FLOOR: f64 = 1e-10;

const SQRT5: f64 = 2.236_067_977_499_79;

/// Kernel hyperparameters, all stored in log space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub log_lengthscales: Vec<f64>,
    pub log_signal_variance: f64,
    pub log_noise_variance: f64,
}

impl KernelParams {
    pub fn new(lengthscales: &[f64], signal_variance: f64, noise_variance: f64) -> Self {
        Self {
            log_lengthscales: lengthscales.iter().map(|l| l.ln()).collect(),
            log_signal_variance: signal_variance.ln(),
            log_noise_variance: noise_variance.max(NOISE_FLOOR).ln(),
        }
    }

    pub fn dim(&self) -> usize {
        self.log_lengthscales.len()
    }

    pub fn signal_variance(&self) -> f64 {
        self.log_signal_variance.exp()
    }

    pub fn noise_variance(&self) -> f64 {
        self.log_noise_variance.exp()
    }

    pub fn lengthscales(&self) -> Vec<f64> {
        self.log_lengthscales.iter().map(|l| l.exp()).collect()
    }

    /// Flattened as `[log ℓ_1, .., log ℓ_d, log σ_f², log σ_n²]`.
    pub fn to_vector(&self) -> DVector<f64> {
        let d = self.dim();
        let mut v = DVector::zeros(d + 2);
        for (i, l) in self.log_lengthscales.iter().enumerate() {
            v[i] = *l;
        }
        v[d] = self.log_signal_variance;
        v[d + 1] = self.log_noise_variance;
        v
    }

    pub fn from_vector(v: &DVector<f64>) -> Self {
        let d = v.len() - 2;
        Self {
            log_lengthscales: v.rows(0, d).iter().copied().collect(),
            log_signal_variance: v[d],
            log_noise_variance: v[d + 1],
        }
    }
}

/// ARD-scaled Euclidean distance, using precomputed inverse length-scales.
#[inline]
fn scaled_distance(a: &[f64], b: &[f64], inv_ls: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .zip(inv_ls)
        .map(|((x, y), s)| {
            let t = (x - y) * s;
            t * t
        })
        .sum::<f64>()
        .sqrt()
}

#[inline]
pub(crate) fn matern52_from_r(r: f64, signal_variance: f64) -> f64 {
    let sr = SQRT5 * r;
    signal_variance * (1.0 + sr + sr * sr / 3.0) * (-sr).exp()
}

pub(crate) fn inverse_lengthscales(params: &KernelParams) -> Vec<f64> {
    params.log_lengthscales.iter().map(|l| (-l).exp()).collect()
}

/// Matérn 5/2 covariance `σ_f²(1 + √5r + 5r²/3)exp(−√5r)` between two points.
pub fn kernel_matern52(a: &[f64], b: &[f64], params: &KernelParams) -> Result<f64> {
    let d = params.dim();
    for p in [a, b] {
        if p.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                got: p.len(),
            });
        }
    }
    let r = scaled_distance(a, b, &inverse_lengthscales(params));
    Ok(matern52_from_r(r, params.signal_variance()))
}

/// Signal covariance matrix over the rows of `x` (no noise term).
pub(crate) fn gram(x: &DMatrix<f64>, params: &KernelParams) -> DMatrix<f64> {
    let n = x.nrows();
    let inv_ls = inverse_lengthscales(params);
    let sf2 = params.signal_variance();
    let rows = rows_of(x);
    let mut k = DMatrix::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = sf2;
        for j in 0..i {
            let v = matern52_from_r(scaled_distance(&rows[i], &rows[j], &inv_ls), sf2);
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    k
}

/// Cross-covariance vector between `point` and each row of `x`.
pub(crate) fn cross(
    rows: &[Vec<f64>],
    point: &[f64],
    inv_ls: &[f64],
    signal_variance: f64,
) -> DVector<f64> {
    DVector::from_iterator(
        rows.len(),
        rows.iter()
            .map(|r| matern52_from_r(scaled_distance(r, point, inv_ls), signal_variance)),
    )
}

pub(crate) fn rows_of(x: &DMatrix<f64>) -> Vec<Vec<f64>> {
    x.row_iter().map(|r| r.iter().copied().collect()).collect()
}
