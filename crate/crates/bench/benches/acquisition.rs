use criterion::{criterion_group, criterion_main, Criterion};
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::hint::black_box;

use acqsched_core::acquisition::{ei, pi, ImprovementContext};
use acqsched_core::{maximize_af, AcquisitionKind, BoxDomain, GpModel, KernelParams};

fn closed_forms(c: &mut Criterion) {
    let ctx = ImprovementContext::from_delta(0.3, 1.2);
    c.bench_function("ei_closed_form", |b| b.iter(|| ei(black_box(&ctx))));
    c.bench_function("pi_closed_form", |b| b.iter(|| pi(black_box(&ctx))));
}

fn maximize(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x = DMatrix::from_fn(20, 2, |_, _| rng.random::<f64>());
    let y = DVector::from_fn(20, |i, _| (x[(i, 0)] - 0.4).powi(2) + (x[(i, 1)] - 0.7).powi(2));
    let model = GpModel::condition(KernelParams::new(&[0.3, 0.3], 1.0, 1e-6), x, &y).unwrap();
    let y_min = y.min();
    let domain = BoxDomain::bbob(2);
    let mut group = c.benchmark_group("maximize_af_n20_d2");
    group.sample_size(20);
    for kind in [AcquisitionKind::Ei, AcquisitionKind::Pi] {
        group.bench_function(kind.as_str(), |b| {
            b.iter(|| {
                let mut rng = ChaCha8Rng::seed_from_u64(9);
                maximize_af(kind, &model, y_min, &domain, &mut rng).unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, closed_forms, maximize);
criterion_main!(benches);
