use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use qent_bench::half_filled_ring;
use qent_core::{
    conditioned_statistics, entanglement_spectrum, ground_state_correlations, modular_hamiltonian, restrict, Region,
    Strategy,
};

fn correlations(c: &mut Criterion) {
    let (spec, _) = half_filled_ring(400);
    c.bench_function("ground_state_correlations N=400", |b| {
        b.iter(|| ground_state_correlations(black_box(&spec)).unwrap())
    });
}

fn spectrum(c: &mut Criterion) {
    let (_, corr) = half_filled_ring(400);
    let g = restrict(&corr, &Region::interval(0, 40)).unwrap();
    c.bench_function("entanglement_spectrum L=40", |b| {
        b.iter(|| modular_hamiltonian(&entanglement_spectrum(black_box(&g)).unwrap()))
    });
}

fn conditioning(c: &mut Criterion) {
    let (_, corr) = half_filled_ring(400);
    let a = Region::interval(0, 10);
    let b = Region::interval(20, 10);
    let mut group = c.benchmark_group("conditioned_statistics");
    group.sample_size(20);
    group.bench_function("enumerate L=10 R=10", |bench| {
        bench.iter(|| conditioned_statistics(&corr, &a, &b, None, Strategy::Enumerate).unwrap())
    });
    group.bench_function("sample 1000 L=10 R=10", |bench| {
        let strategy = Strategy::Sample { samples: 1000, seed: 7 };
        bench.iter(|| conditioned_statistics(&corr, &a, &b, None, strategy).unwrap())
    });
    group.finish();
}

criterion_group!(benches, correlations, spectrum, conditioning);
criterion_main!(benches);
