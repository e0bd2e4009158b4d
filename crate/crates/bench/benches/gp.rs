use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use acqsched_core::gp::log_marginal_likelihood;
use acqsched_core::{GpModel, KernelParams};

fn data(n: usize, d: usize) -> (DMatrix<f64>, DVector<f64>) {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let x = DMatrix::from_fn(n, d, |_, _| rng.random::<f64>());
    let y = DVector::from_fn(n, |i, _| x.row(i).iter().map(|v| (v - 0.3).powi(2)).sum::<f64>());
    (x, y)
}

fn lml(c: &mut Criterion) {
    let mut group = c.benchmark_group("lml_with_gradient");
    for n in [20, 60, 115] {
        let (x, y) = data(n, 5);
        let params = KernelParams::new(&[0.4; 5], 1.0, 1e-6);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| log_marginal_likelihood(black_box(&params), &x, &y).unwrap())
        });
    }
    group.finish();
}

fn fit(c: &mut Criterion) {
    let mut group = c.benchmark_group("fit_8_restarts");
    group.sample_size(10);
    for n in [10, 46] {
        let (x, y) = data(n, 2);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(1);
                GpModel::fit(x.clone(), &y, 8, &mut rng).unwrap()
            })
        });
    }
    group.finish();
}

fn predict(c: &mut Criterion) {
    let (x, y) = data(60, 5);
    let model = GpModel::condition(KernelParams::new(&[0.4; 5], 1.0, 1e-6), x, &y).unwrap();
    let q = [0.5; 5];
    c.bench_function("predict_n60_d5", |b| b.iter(|| model.predict(black_box(&q)).unwrap()));
}

criterion_group!(benches, lml, fit, predict);
criterion_main!(benches);
