use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use rings_bench::{absolute_velocity, necklace, ring};
use rings_core::charpoly::macro_polynomial;
use rings_core::consensus::{criterion_curve, criterion_ring, in_omega, Tolerances, DEFAULT_CURVE_SAMPLES};
use rings_core::dynamics::{build_closed_loop, random_initial_state, AgentModel, Integrator};
use rings_core::ComplexPoint;

fn membership(c: &mut Criterion) {
    let fv = absolute_velocity(2.0);
    let p = ComplexPoint::new(-1.0, 1.0);
    c.bench_function("in_omega/second_order", |b| b.iter(|| in_omega(&fv, black_box(p), 1e-9)));
}

fn criteria(c: &mut Criterion) {
    let fv = absolute_velocity(1.0);
    let tol = Tolerances::default();
    let r = ring("2,1", 32);
    c.bench_function("criterion_ring/2,1x32", |b| b.iter(|| criterion_ring(&fv, &r, black_box(1.0), tol)));
    let p = macro_polynomial(&necklace("2,1")).unwrap();
    c.bench_function("criterion_curve/cassini", |b| {
        b.iter(|| criterion_curve(&fv, &p, black_box(1.0), DEFAULT_CURVE_SAMPLES, tol))
    });
}

fn simulation(c: &mut Criterion) {
    let fv = absolute_velocity(2.0);
    let model = AgentModel::from_frequency_variable(&fv);
    let system = build_closed_loop(&model, &ring("1", 8).laplacian().to_real(), 1.0).unwrap();
    let xi0 = random_initial_state(system.rows(), 1);
    let integrator = Integrator::new(1.0, 1e-3).unwrap();
    c.bench_function("integrate/pursuit8/1000_steps", |b| b.iter(|| integrator.integrate(&system, &xi0, model.dim())));
}

criterion_group!(benches, membership, criteria, simulation);
criterion_main!(benches);
