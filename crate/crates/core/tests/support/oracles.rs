//! Independent reference computations shared by the integration and
//! acceptance tests. Nothing here calls into the code paths it checks.

#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// Result of a brute-force scan over `[-5, 5]^2`.
#[derive(Debug, Clone, Copy)]
pub struct GridScan {
    /// Smallest value seen on any level.
    pub min: f64,
    /// Smallest value on the full-domain level.
    pub coarse_min: f64,
    pub argmin: [f64; 2],
}

fn scan<F: Fn(&[f64]) -> f64>(f: &F, lo: [f64; 2], hi: [f64; 2], n: usize) -> (f64, [f64; 2]) {
    let mut best = (f64::INFINITY, [0.0, 0.0]);
    for i in 0..n {
        let x0 = lo[0] + (hi[0] - lo[0]) * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let x1 = lo[1] + (hi[1] - lo[1]) * j as f64 / (n - 1) as f64;
            let v = f(&[x0, x1]);
            if v < best.0 {
                best = (v, [x0, x1]);
            }
        }
    }
    best
}

/// `n × n` grid over the whole box, followed by `levels − 1` further
/// `n × n` grids, each spanning ±10 spacings of the previous level around
/// its best point.
pub fn grid_min_2d<F: Fn(&[f64]) -> f64>(f: F, n: usize, levels: usize) -> GridScan {
    let (coarse_min, mut argmin) = scan(&f, [-5.0, -5.0], [5.0, 5.0], n);
    let mut min = coarse_min;
    let mut spacing = 10.0 / (n - 1) as f64;
    for _ in 1..levels {
        let w = 10.0 * spacing;
        let lo = [(argmin[0] - w).max(-5.0), (argmin[1] - w).max(-5.0)];
        let hi = [(argmin[0] + w).min(5.0), (argmin[1] + w).min(5.0)];
        let (v, a) = scan(&f, lo, hi, n);
        if v < min {
            min = v;
            argmin = a;
        }
        spacing = (hi[0] - lo[0]).max(hi[1] - lo[1]) / (n - 1) as f64;
    }
    GridScan {
        min,
        coarse_min,
        argmin,
    }
}

/// Weierstrass series `10 (mean_i Σ_k ½^k cos(2π3^k(z_i + ½)) − f0)^3`
/// summed term by term.
pub fn weierstrass_direct(z: &[f64], terms: u32) -> f64 {
    let mut f0 = 0.0;
    let mut a = 1.0;
    let mut b = 1.0;
    for _ in 0..terms {
        f0 += a * (PI * b).cos();
        a *= 0.5;
        b *= 3.0;
    }
    let mut total = 0.0;
    for zi in z {
        let mut a = 1.0;
        let mut b = 1.0;
        for _ in 0..terms {
            total += a * (2.0 * PI * b * (zi + 0.5)).cos();
            a *= 0.5;
            b *= 3.0;
        }
    }
    10.0 * (total / z.len() as f64 - f0).powi(3)
}

/// Matérn 5/2 written out from its definition.
pub fn matern52(a: &[f64], b: &[f64], lengthscales: &[f64], signal: f64) -> f64 {
    let r = a
        .iter()
        .zip(b)
        .zip(lengthscales)
        .map(|((x, y), l)| ((x - y) / l).powi(2))
        .sum::<f64>()
        .sqrt();
    let s = 5f64.sqrt() * r;
    signal * (1.0 + s + s * s / 3.0) * (-s).exp()
}

/// Posterior mean and variance (standardized units) by LU solves against
/// the full covariance, no factor reuse.
pub fn dense_posterior(
    x: &DMatrix<f64>,
    y: &DVector<f64>,
    point: &[f64],
    lengthscales: &[f64],
    signal: f64,
    noise: f64,
) -> (f64, f64) {
    let n = x.nrows();
    let row = |i: usize| -> Vec<f64> { x.row(i).iter().copied().collect() };
    let k = DMatrix::from_fn(n, n, |i, j| {
        matern52(&row(i), &row(j), lengthscales, signal) + if i == j { noise } else { 0.0 }
    });
    let ks = DVector::from_fn(n, |i, _| matern52(&row(i), point, lengthscales, signal));
    let lu = k.lu();
    let w = lu.solve(y).expect("non-singular");
    let v = lu.solve(&ks).expect("non-singular");
    (ks.dot(&w), signal + noise - ks.dot(&v))
}

/// Monte-Carlo estimates of PI and EI for `Y ~ N(μ, σ²)` with improvement
/// `Δ = y_min − μ`: returns `((pi, pi_se), (ei, ei_se))`.
pub fn improvement_mc<R: Rng>(delta: f64, sigma: f64, samples: usize, rng: &mut R) -> ((f64, f64), (f64, f64)) {
    let (mut hits, mut sum, mut sum_sq) = (0usize, 0.0, 0.0);
    for _ in 0..samples {
        let eps: f64 = rng.sample(StandardNormal);
        let gain = delta - sigma * eps;
        if gain > 0.0 {
            hits += 1;
            sum += gain;
            sum_sq += gain * gain;
        }
    }
    let n = samples as f64;
    let p = hits as f64 / n;
    let m = sum / n;
    let var = (sum_sq / n - m * m).max(0.0) * n / (n - 1.0);
    ((p, (p * (1.0 - p) / n).sqrt()), (m, (var / n).sqrt()))
}

/// Central differences of `f` at `theta` with step `h`.
pub fn central_gradient<F: Fn(&DVector<f64>) -> f64>(f: F, theta: &DVector<f64>, h: f64) -> DVector<f64> {
    DVector::from_fn(theta.len(), |i, _| {
        let mut up = theta.clone();
        let mut dn = theta.clone();
        up[i] += h;
        dn[i] -= h;
        (f(&up) - f(&dn)) / (2.0 * h)
    })
}
