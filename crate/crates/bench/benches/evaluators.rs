use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use mathieu_core::inequalities::sweep;
use mathieu_core::mathieu::{mathieu_s, mathieu_s_direct};
use mathieu_core::representations::{kernel_K, s_via_bessel_integral, s_via_emersleben, s_via_laplace};
use mathieu_core::specfun::{bessel_j, clausen2, gamma_fn, zeta_fn, BesselOrder};
use mathieu_core::{GridSpec, MathieuPoint};

fn specfun(c: &mut Criterion) {
    c.bench_function("gamma 7.3", |b| b.iter(|| gamma_fn(black_box(7.3))));
    c.bench_function("zeta 2.5", |b| b.iter(|| zeta_fn(black_box(2.5))));
    let nu = BesselOrder::new(1.5).unwrap();
    c.bench_function("J_1.5(3)", |b| b.iter(|| bessel_j(nu, black_box(3.0))));
    c.bench_function("J_1.5(200)", |b| b.iter(|| bessel_j(nu, black_box(200.0))));
    c.bench_function("Cl2(1)", |b| b.iter(|| clausen2(black_box(1.0))));
}

fn series(c: &mut Criterion) {
    let p = MathieuPoint::new(1.0, 1.0).unwrap();
    c.bench_function("S direct r=1", |b| b.iter(|| mathieu_s_direct(black_box(p), 1e-12)));
    let p = MathieuPoint::new(2.5, 30.0).unwrap();
    c.bench_function("S_2.5 direct r=30", |b| b.iter(|| mathieu_s(black_box(p), 1e-12)));
}

fn representations(c: &mut Criterion) {
    let p = MathieuPoint::new(1.0, 1.0).unwrap();
    c.bench_function("emersleben r=1", |b| b.iter(|| s_via_emersleben(black_box(1.0), 1e-10)));
    c.bench_function("bessel integral r=1", |b| b.iter(|| s_via_bessel_integral(black_box(p), 1e-10)));
    c.bench_function("laplace mu=1 r=1", |b| b.iter(|| s_via_laplace(black_box(p), 1e-8)));
    c.bench_function("kernel K(2.3)", |b| b.iter(|| kernel_K(black_box(2.3))));
}

fn sweeps(c: &mut Criterion) {
    let grid = GridSpec::default();
    let mut g = c.benchmark_group("sweeps");
    g.sample_size(10);
    g.bench_function("turan_mathieu default grid", |b| b.iter(|| sweep("turan_mathieu", &grid)));
    g.finish();
}

criterion_group!(benches, specfun, series, representations, sweeps);
criterion_main!(benches);
