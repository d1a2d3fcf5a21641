use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use hyperlin_core::centrality::rw_betweenness;
use hyperlin_core::fixtures::{circulant, h_units, lower_triangular};
use hyperlin_core::randwalk::{hitting_times, transition_matrix};
use hyperlin_core::spectra::{spectrum, JacobiOptions};
use hyperlin_core::structures::units;
use hyperlin_core::{MatrixKind, ReturnConvention, WalkPolicy, WeightScheme};

fn linalg(c: &mut Criterion) {
    let mut g = c.benchmark_group("incidence");
    for n in [8, 16, 32] {
        let h = circulant(n);
        let inc = h.incidence_matrix();
        g.bench_with_input(BenchmarkId::new("nullspace", n), &inc, |b, m| b.iter(|| black_box(m).nullspace()));
        g.bench_with_input(BenchmarkId::new("determinant", n), &inc, |b, m| {
            b.iter(|| black_box(m).determinant())
        });
        let lower = lower_triangular(n);
        g.bench_with_input(BenchmarkId::new("units", n), &lower, |b, h| b.iter(|| units(black_box(h))));
    }
    g.finish();
}

fn spectra(c: &mut Criterion) {
    let h = h_units();
    let w = WeightScheme::fully_normalized(&h).expect("h_units has no singleton edge");
    c.bench_function("spectrum/h_units/L", |b| {
        b.iter(|| spectrum(black_box(&h), MatrixKind::L, &w, JacobiOptions::default()))
    });
}

fn walks(c: &mut Criterion) {
    let h = circulant(12);
    let p = transition_matrix(&h, WalkPolicy::UniformNonLazy).expect("circulant walk is defined");
    c.bench_function("hitting_times/circ_12", |b| {
        b.iter(|| hitting_times(black_box(&p), "1", ReturnConvention::FirstReturn))
    });
    let h = h_units();
    c.bench_function("betweenness/h_units/T=8", |b| {
        b.iter(|| rw_betweenness(black_box(&h), WalkPolicy::UniformNonLazy, 8))
    });
}

criterion_group!(benches, linalg, spectra, walks);
criterion_main!(benches);
