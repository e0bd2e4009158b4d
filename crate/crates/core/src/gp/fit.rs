//! Multi-start maximization of the log marginal likelihood.

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use super::kernel::{KernelParams, NOISE_FLOOR};
use super::lml::log_marginal_likelihood;

/// Box bounds on the log hyperparameters.
pub(crate) struct LogBounds {
    lower: DVector<f64>,
    upper: DVector<f64>,
}

impl LogBounds {
    pub(crate) fn for_dim(d: usize) -> Self {
        let mut lower = DVector::from_element(d + 2, 1e-3f64.ln());
        let mut upper = DVector::from_element(d + 2, 1e2f64.ln());
        lower[d] = 1e-3f64.ln();
        upper[d] = 1e4f64.ln();
        lower[d + 1] = NOISE_FLOOR.ln();
        upper[d + 1] = 1f64.ln();
        Self { lower, upper }
    }

    fn clamp(&self, v: &DVector<f64>) -> DVector<f64> {
        DVector::from_iterator(
            v.len(),
            v.iter()
                .zip(self.lower.iter().zip(self.upper.iter()))
                .map(|(x, (lo, hi))| x.clamp(*lo, *hi)),
        )
    }
}

/// Log-uniform start: lengthscales in [1e-2, 10], signal in [1e-2, 1e2],
/// noise in [1e-8, 1e-2].
pub(crate) fn sample_start<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DVector<f64> {
    let mut log_uniform = |lo: f64, hi: f64| rng.random_range(lo.ln()..hi.ln());
    let mut v = DVector::zeros(d + 2);
    for i in 0..d {
        v[i] = log_uniform(1e-2, 10.0);
    }
    v[d] = log_uniform(1e-2, 1e2);
    v[d + 1] = log_uniform(1e-8, 1e-2);
    v
}

/// Negative LML and its gradient, or `None` when the factorization fails.
fn objective(
    theta: &DVector<f64>,
    x: &DMatrix<f64>,
    y: &DVector<f64>,
) -> Option<(f64, DVector<f64>)> {
    let v = log_marginal_likelihood(&KernelParams::from_vector(theta), x, y).ok()?;
    if !v.value.is_finite() || v.gradient.iter().any(|g| !g.is_finite()) {
        return None;
    }
    Some((-v.value, -v.gradient))
}

const MAX_ITERS: usize = 100;
const MAX_STEP: f64 = 3.0;

/// Projected BFGS with Armijo backtracking, minimizing the negative LML.
/// Returns the final point and objective value.
pub(crate) fn local_search(
    start: DVector<f64>,
    bounds: &LogBounds,
    x: &DMatrix<f64>,
    y: &DVector<f64>,
) -> Option<(DVector<f64>, f64)> {
    let m = start.len();
    let mut theta = bounds.clamp(&start);
    let (mut f, mut g) = objective(&theta, x, y)?;
    let mut h = DMatrix::<f64>::identity(m, m);

    for _ in 0..MAX_ITERS {
        let mut p = -(&h * &g);
        if p.dot(&g) >= 0.0 {
            h.fill_with_identity();
            p = -g.clone();
        }
        // freeze coordinates pinned at a bound and pushing outward
        for i in 0..m {
            let at_lo = theta[i] <= bounds.lower[i] && p[i] < 0.0;
            let at_hi = theta[i] >= bounds.upper[i] && p[i] > 0.0;
            if at_lo || at_hi {
                p[i] = 0.0;
            }
        }
        let pmax = p.amax();
        if pmax < 1e-10 {
            break;
        }
        if pmax > MAX_STEP {
            p *= MAX_STEP / pmax;
        }

        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let cand = bounds.clamp(&(&theta + t * &p));
            if let Some((fc, gc)) = objective(&cand, x, y) {
                let decrease = g.dot(&(&cand - &theta));
                if fc <= f + 1e-4 * decrease {
                    accepted = Some((cand, fc, gc));
                    break;
                }
            }
            t *= 0.5;
        }
        let Some((cand, fc, gc)) = accepted else {
            break;
        };

        let s = &cand - &theta;
        let yv = &gc - &g;
        let sy = s.dot(&yv);
        if sy > 1e-12 {
            let rho = 1.0 / sy;
            let eye = DMatrix::<f64>::identity(m, m);
            let left = &eye - rho * &s * yv.transpose();
            let right = &eye - rho * &yv * s.transpose();
            h = &left * &h * &right + rho * &s * s.transpose();
        }

        let converged = (f - fc).abs() <= 1e-10 * (1.0 + f.abs());
        theta = cand;
        f = fc;
        g = gc;
        if converged {
            break;
        }
    }
    Some((theta, f))
}
