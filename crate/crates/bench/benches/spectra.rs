use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rings_bench::{necklace, ring, REFERENCE_NECKLACES};
use rings_core::charpoly::{char_poly, macro_polynomial, ring_spectrum};
use rings_core::curves::{derive_curve, trace_curve};
use rings_core::topology::{count_simple_rings, enumerate_simple_rings};
use rings_core::weighted::{weighted_spectrum, WeightedRing};

fn counting(c: &mut Criterion) {
    c.bench_function("count_simple_rings/127", |b| b.iter(|| count_simple_rings(black_box(127))));
    c.bench_function("enumerate_simple_rings/16", |b| b.iter(|| enumerate_simple_rings(black_box(16))));
}

fn polynomials(c: &mut Criterion) {
    let mut group = c.benchmark_group("char_poly");
    for m in [4, 16] {
        let r = ring("2,2,1", m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &r, |b, r| b.iter(|| char_poly(r)));
    }
    group.finish();
    let mut group = c.benchmark_group("derive_curve");
    for text in REFERENCE_NECKLACES {
        let p = macro_polynomial(&necklace(text)).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(text), &p, |b, p| b.iter(|| derive_curve(p)));
    }
    group.finish();
}

fn spectra(c: &mut Criterion) {
    let mut group = c.benchmark_group("ring_spectrum");
    for m in [16, 64, 256] {
        let r = ring("2,1,1", m);
        group.bench_with_input(BenchmarkId::from_parameter(m), &r, |b, r| b.iter(|| ring_spectrum(r)));
    }
    group.finish();
    let p = macro_polynomial(&necklace("2,2,1")).unwrap();
    c.bench_function("trace_curve/sextic/720", |b| b.iter(|| trace_curve(&p, black_box(720))));
    let w = WeightedRing::new(1024, 0.5).unwrap();
    c.bench_function("weighted_spectrum/1024", |b| b.iter(|| weighted_spectrum(black_box(&w))));
}

criterion_group!(benches, counting, polynomials, spectra);
criterion_main!(benches);
