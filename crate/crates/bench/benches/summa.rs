use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use summa_bench::{smooth, spike};
use summa_core::maximal::{maximal_function_with, MaximalVariant, SideLadder};
use summa_core::norms::{herz_norm, HerzDomain, HerzInput, HerzVariant};
use summa_core::spectral::{analyze, kernel_on_grid, summability_mean, synthesize};
use summa_core::{KernelSpec, Q};

fn transforms(c: &mut Criterion) {
    let mut group = c.benchmark_group("fft");
    for g in [64, 256] {
        let f = smooth(2, g).unwrap();
        let spec = analyze(&f).unwrap();
        group.bench_with_input(BenchmarkId::new("analyze", g), &f, |b, f| b.iter(|| analyze(black_box(f)).unwrap()));
        group.bench_with_input(BenchmarkId::new("synthesize", g), &spec, |b, s| {
            b.iter(|| synthesize(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn kernels(c: &mut Criterion) {
    let mut group = c.benchmark_group("kernel_on_grid");
    for (name, spec) in [
        ("dirichlet_q1", KernelSpec::dirichlet(2, Q::One, 16)),
        ("fejer_qinf", KernelSpec::fejer(2, Q::Inf, 16)),
        ("bochner_riesz", KernelSpec::bochner_riesz(2, 16, 0.5)),
    ] {
        group.bench_function(name, |b| b.iter(|| kernel_on_grid(black_box(&spec), 2, 128).unwrap()));
    }
    group.finish();

    let f = smooth(2, 128).unwrap();
    let coeffs = analyze(&f).unwrap();
    let spec = KernelSpec::riesz(2, Q::Two, 24, 1.0, 2.0);
    c.bench_function("riesz_mean_128", |b| b.iter(|| summability_mean(black_box(&coeffs), &spec).unwrap()));
}

fn maximal(c: &mut Criterion) {
    let mut group = c.benchmark_group("maximal");
    group.sample_size(20);
    let f = spike(2, 64).unwrap();
    for (name, variant) in [
        ("cube", MaximalVariant::Cube),
        ("cone2", MaximalVariant::Cone(2.0)),
        ("strong", MaximalVariant::Strong),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| maximal_function_with(black_box(&f), variant, &SideLadder::DyadicPlusOdd).unwrap())
        });
    }
    group.finish();
}

fn norms(c: &mut Criterion) {
    let f = smooth(2, 256).unwrap();
    let dom = HerzDomain::Torus { k_min: None };
    c.bench_function("herz_e2_256", |b| {
        b.iter(|| herz_norm(HerzInput::Grid(black_box(&f)), 2.0, HerzVariant::E, dom).unwrap())
    });
    c.bench_function("herz_eprime2_256", |b| {
        b.iter(|| herz_norm(HerzInput::Grid(black_box(&f)), 2.0, HerzVariant::EPrime, dom).unwrap())
    });
}

criterion_group!(benches, transforms, kernels, maximal, norms);
criterion_main!(benches);
