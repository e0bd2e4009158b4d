//! Gaussian-process regression on the unit cube.
//!
//! Inputs are expected to be pre-scaled to `[0, 1]^d`. Targets are
//! standardized internally and every prediction is returned in the original
//! output units.

mod fit;
mod kernel;
mod lml;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

pub use kernel::{kernel_matern52, KernelParams, NOISE_FLOOR};
pub use lml::{log_marginal_likelihood, LmlValue};

use crate::error::{Error, Result};
use fit::{local_search, sample_start, LogBounds};
use kernel::{cross, gram, inverse_lengthscales, rows_of};
use lml::factorize;

/// Hyperparameter restarts used when the caller has no preference.
pub const DEFAULT_RESTARTS: usize = 8;

/// Gaussian predictive distribution at one point, in original output units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Posterior {
    pub mean: f64,
    pub std: f64,
}

/// A GP conditioned on training data with fixed hyperparameters.
#[derive(Debug, Clone)]
pub struct GpModel {
    params: KernelParams,
    train_x: DMatrix<f64>,
    train_y_standardized: DVector<f64>,
    y_mean: f64,
    y_std: f64,
    chol: DMatrix<f64>,
    alpha: DVector<f64>,
    jitter: f64,
    rows: Vec<Vec<f64>>,
    inv_ls: Vec<f64>,
}

fn standardize(y: &DVector<f64>) -> (DVector<f64>, f64, f64) {
    let n = y.len() as f64;
    let mean = y.sum() / n;
    let var = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    let mut std = var.sqrt();
    // constant targets: keep the data on its own scale
    if !(std >= 1e-12) {
        std = 1.0;
    }
    (y.map(|v| (v - mean) / std), mean, std)
}

fn validate(train_x: &DMatrix<f64>, train_y: &DVector<f64>, min_points: usize) -> Result<()> {
    if train_x.nrows() < min_points {
        return Err(Error::TooFewPoints {
            required: min_points,
            got: train_x.nrows(),
        });
    }
    if train_y.len() != train_x.nrows() {
        return Err(Error::DimensionMismatch {
            expected: train_x.nrows(),
            got: train_y.len(),
        });
    }
    if let Some(index) = train_y.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFiniteTarget { index });
    }
    if train_x.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidData("non-finite training input".into()));
    }
    Ok(())
}

impl GpModel {
    /// Condition on `(train_x, train_y)` with the given hyperparameters, no
    /// fitting. Accepts a single training point.
    pub fn condition(
        params: KernelParams,
        train_x: DMatrix<f64>,
        train_y: &DVector<f64>,
    ) -> Result<Self> {
        validate(&train_x, train_y, 1)?;
        if train_x.ncols() != params.dim() {
            return Err(Error::DimensionMismatch {
                expected: params.dim(),
                got: train_x.ncols(),
            });
        }
        let (ys, y_mean, y_std) = standardize(train_y);
        Self::from_standardized(params, train_x, ys, y_mean, y_std)
    }

    fn from_standardized(
        params: KernelParams,
        train_x: DMatrix<f64>,
        train_y_standardized: DVector<f64>,
        y_mean: f64,
        y_std: f64,
    ) -> Result<Self> {
        let mut k = gram(&train_x, &params);
        let sn2 = params.noise_variance();
        for i in 0..k.nrows() {
            k[(i, i)] += sn2;
        }
        let (chol, jitter) = factorize(&k)?;
        let alpha = chol.solve(&train_y_standardized);
        let rows = rows_of(&train_x);
        let inv_ls = inverse_lengthscales(&params);
        Ok(Self {
            chol: chol.unpack(),
            params,
            train_x,
            train_y_standardized,
            y_mean,
            y_std,
            alpha,
            jitter,
            rows,
            inv_ls,
        })
    }

    /// Fit hyperparameters by maximizing the log marginal likelihood from
    /// `restarts` random starting points, then condition on the data.
    pub fn fit<R: Rng + ?Sized>(
        train_x: DMatrix<f64>,
        train_y: &DVector<f64>,
        restarts: usize,
        rng: &mut R,
    ) -> Result<Self> {
        validate(&train_x, train_y, 2)?;
        if restarts == 0 {
            return Err(Error::InvalidConfig("gp restarts must be at least 1".into()));
        }
        let d = train_x.ncols();
        let (ys, y_mean, y_std) = standardize(train_y);
        let bounds = LogBounds::for_dim(d);

        // all starts are drawn up front so the stream does not depend on
        // how each local search went
        let starts: Vec<_> = (0..restarts).map(|_| sample_start(d, rng)).collect();
        let mut best: Option<(DVector<f64>, f64)> = None;
        for start in starts {
            if let Some((theta, f)) = local_search(start, &bounds, &train_x, &ys) {
                if best.as_ref().map_or(true, |(_, bf)| f < *bf) {
                    best = Some((theta, f));
                }
            }
        }
        let Some((theta, _)) = best else {
            return Err(Error::Cholesky { jitter: 1e-4 });
        };
        Self::from_standardized(KernelParams::from_vector(&theta), train_x, ys, y_mean, y_std)
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    pub fn dim(&self) -> usize {
        self.params.dim()
    }

    pub fn n_train(&self) -> usize {
        self.train_x.nrows()
    }

    pub fn train_x(&self) -> &DMatrix<f64> {
        &self.train_x
    }

    pub fn train_y_standardized(&self) -> &DVector<f64> {
        &self.train_y_standardized
    }

    pub fn y_mean(&self) -> f64 {
        self.y_mean
    }

    pub fn y_std(&self) -> f64 {
        self.y_std
    }

    /// Lower Cholesky factor of `K + (σ_n² + jitter)I`.
    pub fn chol(&self) -> &DMatrix<f64> {
        &self.chol
    }

    pub fn alpha(&self) -> &DVector<f64> {
        &self.alpha
    }

    pub fn jitter(&self) -> f64 {
        self.jitter
    }

    /// Mean and variance in standardized units.
    pub fn predict_standardized(&self, x: &[f64]) -> Result<(f64, f64)> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let sf2 = self.params.signal_variance();
        let ks = cross(&self.rows, x, &self.inv_ls, sf2);
        let mean = ks.dot(&self.alpha);

        // forward substitution L v = k*
        let n = ks.len();
        let mut v = vec![0.0; n];
        for i in 0..n {
            let mut s = ks[i];
            for (j, vj) in v.iter().enumerate().take(i) {
                s -= self.chol[(i, j)] * vj;
            }
            v[i] = s / self.chol[(i, i)];
        }
        let reduction: f64 = v.iter().map(|t| t * t).sum();
        let var = (sf2 + self.params.noise_variance() - reduction).max(0.0);
        Ok((mean, var))
    }

    pub fn predict(&self, x: &[f64]) -> Result<Posterior> {
        let (mean, var) = self.predict_standardized(x)?;
        Ok(Posterior {
            mean: self.y_mean + self.y_std * mean,
            std: var.sqrt() * self.y_std,
        })
    }
}
