#[path = "support/oracles.rs"]
mod oracles;

use acqsched_core::gp::{log_marginal_likelihood, GpModel, KernelParams};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Problem {
    x: DMatrix<f64>,
    y: DVector<f64>,
    params: KernelParams,
}

fn random_problem(rng: &mut ChaCha8Rng) -> Problem {
    let d = rng.random_range(1..=5);
    let n = rng.random_range(2..=20);
    let x = DMatrix::from_fn(n, d, |_, _| rng.random::<f64>());
    let y = DVector::from_fn(n, |_, _| rng.random_range(-2.0..2.0));
    let ls: Vec<f64> = (0..d).map(|_| rng.random_range(0.1..1.5)).collect();
    let params = KernelParams::new(&ls, rng.random_range(0.5..2.0), rng.random_range(1e-3..1e-1));
    Problem { x, y, params }
}

#[test]
fn posterior_matches_dense_solve() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..20 {
        let p = random_problem(&mut rng);
        let model = GpModel::condition(p.params.clone(), p.x.clone(), &p.y).unwrap();
        let ys = model.train_y_standardized().clone();
        for _ in 0..10 {
            let q: Vec<f64> = (0..p.x.ncols()).map(|_| rng.random::<f64>()).collect();
            let (m, v) = model.predict_standardized(&q).unwrap();
            let (m_ref, v_ref) = oracles::dense_posterior(
                &p.x,
                &ys,
                &q,
                &p.params.lengthscales(),
                p.params.signal_variance(),
                p.params.noise_variance(),
            );
            assert!((m - m_ref).abs() < 1e-8, "mean {m} vs {m_ref}");
            assert!((v - v_ref.max(0.0)).abs() < 1e-8, "var {v} vs {v_ref}");
        }
    }
}

#[test]
fn cholesky_reconstructs_covariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let p = random_problem(&mut rng);
        let model = GpModel::condition(p.params.clone(), p.x.clone(), &p.y).unwrap();
        assert_eq!(model.jitter(), 0.0);
        let n = p.x.nrows();
        let ls = p.params.lengthscales();
        let k = DMatrix::from_fn(n, n, |i, j| {
            let a: Vec<f64> = p.x.row(i).iter().copied().collect();
            let b: Vec<f64> = p.x.row(j).iter().copied().collect();
            oracles::matern52(&a, &b, &ls, p.params.signal_variance())
                + if i == j { p.params.noise_variance() } else { 0.0 }
        });
        let l = model.chol();
        let err = (l * l.transpose() - &k).norm() / k.norm();
        assert!(err < 1e-8, "{err}");
    }
}

#[test]
fn variance_is_bounded() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let p = random_problem(&mut rng);
        let model = GpModel::condition(p.params.clone(), p.x.clone(), &p.y).unwrap();
        let cap = p.params.signal_variance() + p.params.noise_variance() + 1e-8;
        for _ in 0..50 {
            let q: Vec<f64> = (0..p.x.ncols()).map(|_| rng.random::<f64>()).collect();
            let (_, v) = model.predict_standardized(&q).unwrap();
            assert!((0.0..=cap).contains(&v));
            assert!(model.predict(&q).unwrap().std >= 0.0);
        }
    }
}

#[test]
fn lml_gradient_matches_central_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..25 {
        let p = random_problem(&mut rng);
        let lml = |theta: &DVector<f64>| {
            log_marginal_likelihood(&KernelParams::from_vector(theta), &p.x, &p.y)
                .unwrap()
                .value
        };
        let analytic = log_marginal_likelihood(&p.params, &p.x, &p.y).unwrap().gradient;
        let numeric = oracles::central_gradient(lml, &p.params.to_vector(), 1e-5);
        for i in 0..analytic.len() {
            let scale = numeric[i].abs().max(1e-3);
            let rel = (analytic[i] - numeric[i]).abs() / scale;
            assert!(rel < 1e-4, "component {i}: {} vs {}", analytic[i], numeric[i]);
        }
    }
}

#[test]
fn fitted_model_interpolates_at_noise_floor() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let x = DMatrix::from_fn(12, 2, |_, _| rng.random::<f64>());
    let y = DVector::from_fn(12, |i, _| (3.0 * x[(i, 0)]).sin() + x[(i, 1)].powi(2));
    let model = GpModel::fit(x.clone(), &y, 8, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    assert!(model.params().noise_variance() < 1e-6);
    for i in 0..12 {
        let q: Vec<f64> = x.row(i).iter().copied().collect();
        let m = model.predict(&q).unwrap().mean;
        assert!((m - y[i]).abs() <= 1e-3 * model.y_std(), "{m} vs {}", y[i]);
    }
}

#[test]
fn fit_is_bit_identical_for_a_seed() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let p = random_problem(&mut rng);
    let a = GpModel::fit(p.x.clone(), &p.y, 5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    let b = GpModel::fit(p.x.clone(), &p.y, 5, &mut ChaCha8Rng::seed_from_u64(1)).unwrap();
    assert_eq!(a.params(), b.params());
    assert_eq!(a.alpha(), b.alpha());
}
