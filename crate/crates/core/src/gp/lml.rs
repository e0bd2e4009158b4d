//! Log marginal likelihood of a zero-mean GP and its gradient with respect
//! to the log hyperparameters.

use std::f64::consts::PI;

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use super::kernel::{inverse_lengthscales, rows_of, KernelParams};
use crate::error::{Error, Result};

const SQRT5: f64 = 2.236_067_977_499_79;

/// Jitter levels tried, in order, when the plain factorization fails.
const JITTER_LADDER: [f64; 8] = [0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6, 1e-5, 1e-4];

#[derive(Debug, Clone)]
pub struct LmlValue {
    pub value: f64,
    /// Same layout as the flattened parameters: lengthscales, signal, noise.
    pub gradient: DVector<f64>,
    /// Diagonal jitter that had to be added for the factorization to succeed.
    pub jitter: f64,
}

/// Factor `k` (which already carries the noise term), escalating diagonal
/// jitter on failure. Returns the factor and the jitter used.
pub(crate) fn factorize(k: &DMatrix<f64>) -> Result<(Cholesky<f64, Dyn>, f64)> {
    for &jitter in &JITTER_LADDER {
        let mut m = k.clone();
        if jitter > 0.0 {
            for i in 0..m.nrows() {
                m[(i, i)] += jitter;
            }
        }
        if let Some(c) = Cholesky::new(m) {
            if c.l_dirty().diagonal().iter().all(|v| v.is_finite() && *v > 0.0) {
                return Ok((c, jitter));
            }
        }
    }
    Err(Error::Cholesky {
        jitter: JITTER_LADDER[JITTER_LADDER.len() - 1],
    })
}

/// `−½yᵀα − Σ log Lᵢᵢ − (n/2) log 2π` with its analytic gradient.
pub fn log_marginal_likelihood(
    params: &KernelParams,
    train_x: &DMatrix<f64>,
    train_y: &DVector<f64>,
) -> Result<LmlValue> {
    let n = train_x.nrows();
    let d = params.dim();
    if train_x.ncols() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: train_x.ncols(),
        });
    }
    if train_y.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: train_y.len(),
        });
    }

    let sf2 = params.signal_variance();
    let sn2 = params.noise_variance();
    let inv_ls = inverse_lengthscales(params);
    let rows = rows_of(train_x);

    // Covariance plus, per pair, the common factor of ∂k/∂log ℓ_j.
    let mut k = DMatrix::zeros(n, n);
    let mut dfactor = DMatrix::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = sf2 + sn2;
        for j in 0..i {
            let mut r2 = 0.0;
            for (m, s) in inv_ls.iter().enumerate() {
                let t = (rows[i][m] - rows[j][m]) * s;
                r2 += t * t;
            }
            let sr = SQRT5 * r2.sqrt();
            let e = (-sr).exp();
            let kij = sf2 * (1.0 + sr + sr * sr / 3.0) * e;
            let g = sf2 * (5.0 / 3.0) * (1.0 + sr) * e;
            k[(i, j)] = kij;
            k[(j, i)] = kij;
            dfactor[(i, j)] = g;
        }
    }

    let (chol, jitter) = factorize(&k)?;
    let alpha = chol.solve(train_y);
    let log_det_half: f64 = chol.l_dirty().diagonal().iter().map(|v| v.ln()).sum();
    let value = -0.5 * train_y.dot(&alpha) - log_det_half - 0.5 * n as f64 * (2.0 * PI).ln();

    // W = ααᵀ − K⁻¹; ∂L/∂θ = ½ tr(W ∂K/∂θ)
    let k_inv = chol.inverse();
    let mut grad = DVector::zeros(d + 2);
    let mut signal = 0.0;
    let mut trace_w = 0.0;
    for i in 0..n {
        let wii = alpha[i] * alpha[i] - k_inv[(i, i)];
        trace_w += wii;
        signal += wii * sf2;
        for j in 0..i {
            let wij = alpha[i] * alpha[j] - k_inv[(i, j)];
            // off-diagonal entries appear twice in the symmetric trace
            signal += 2.0 * wij * k[(i, j)];
            let g = 2.0 * wij * dfactor[(i, j)];
            for (m, s) in inv_ls.iter().enumerate() {
                let t = (rows[i][m] - rows[j][m]) * s;
                grad[m] += g * t * t;
            }
        }
    }
    for m in 0..d {
        grad[m] *= 0.5;
    }
    grad[d] = 0.5 * signal;
    grad[d + 1] = 0.5 * sn2 * trace_w;

    Ok(LmlValue {
        value,
        gradient: grad,
        jitter,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn one_point_closed_form() {
        // k(x,x) + σ_n² = 1 with y = 0
        let sn2 = 1e-6;
        let p = KernelParams::new(&[0.5], 1.0 - sn2, sn2);
        let x = DMatrix::from_element(1, 1, 0.3);
        let y = DVector::from_element(1, 0.0);
        let v = log_marginal_likelihood(&p, &x, &y).unwrap().value;
        assert!((v - (-0.5 * (2.0 * PI).ln())).abs() < 1e-12);
        assert!((v + 0.91894).abs() < 1e-5);
    }

    #[test]
    fn zero_targets_drop_data_fit_term() {
        let p = KernelParams::new(&[0.4, 0.8], 1.3, 1e-3);
        let x = DMatrix::from_row_slice(3, 2, &[0.1, 0.2, 0.5, 0.9, 0.7, 0.4]);
        let y = DVector::zeros(3);
        let got = log_marginal_likelihood(&p, &x, &y).unwrap().value;

        let mut k = super::super::kernel::gram(&x, &p);
        for i in 0..3 {
            k[(i, i)] += p.noise_variance();
        }
        let chol = Cholesky::new(k).unwrap();
        let logdet: f64 = chol.l().diagonal().iter().map(|v| v.ln()).sum();
        let expected = -logdet - 1.5 * (2.0 * PI).ln();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (n, d) = (6, 3);
        let x = DMatrix::from_fn(n, d, |_, _| rng.random::<f64>());
        let y = DVector::from_fn(n, |_, _| rng.random::<f64>() * 2.0 - 1.0);
        let p = KernelParams::new(&[0.3, 0.6, 1.1], 0.9, 0.05);
        let analytic = log_marginal_likelihood(&p, &x, &y).unwrap().gradient;

        let theta = p.to_vector();
        let h = 1e-5;
        for i in 0..theta.len() {
            let mut up = theta.clone();
            let mut dn = theta.clone();
            up[i] += h;
            dn[i] -= h;
            let fu = log_marginal_likelihood(&KernelParams::from_vector(&up), &x, &y)
                .unwrap()
                .value;
            let fd = log_marginal_likelihood(&KernelParams::from_vector(&dn), &x, &y)
                .unwrap()
                .value;
            let fd_grad = (fu - fd) / (2.0 * h);
            let rel = (analytic[i] - fd_grad).abs() / fd_grad.abs().max(1e-6);
            assert!(rel < 1e-4, "param {i}: {} vs {}", analytic[i], fd_grad);
        }
    }

    #[test]
    fn duplicate_rows_trigger_jitter_or_noise() {
        let p = KernelParams::new(&[0.5], 1.0, 1e-10);
        let x = DMatrix::from_row_slice(2, 1, &[0.4, 0.4]);
        let y = DVector::from_row_slice(&[1.0, -1.0]);
        let v = log_marginal_likelihood(&p, &x, &y).unwrap();
        assert!(v.value.is_finite());
    }
}
