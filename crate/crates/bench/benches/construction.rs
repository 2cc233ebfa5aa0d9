use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dsop_core::asymptotics::ratio_trajectory;
use dsop_core::rational::int;
use dsop_core::sobolev::{sobolev_poly, sobolev_poly_via_kernel};
use dsop_core::{MassTerm, Rational, SobolevSpec};

fn four_masses() -> SobolevSpec {
    SobolevSpec::laguerre(
        0,
        vec![
            MassTerm::new(int(-1), 0, int(10)),
            MassTerm::new(int(-3), 1, int(5)),
            MassTerm::new(int(-9), 1, int(5)),
            MassTerm::new(int(-10), 3, int(20)),
        ],
    )
    .unwrap()
}

fn construction(c: &mut Criterion) {
    let spec = four_masses();
    let mut group = c.benchmark_group("construct");
    for n in [5usize, 10, 20] {
        group.bench_with_input(BenchmarkId::new("gram", n), &n, |b, &n| {
            b.iter(|| sobolev_poly::<Rational>(black_box(n), &spec).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("connection", n), &n, |b, &n| {
            b.iter(|| sobolev_poly_via_kernel(black_box(n), &spec).unwrap())
        });
    }
    group.finish();
}

fn trajectory(c: &mut Criterion) {
    let spec = SobolevSpec::laguerre(0, vec![MassTerm::new(int(-1), 0, int(1))]).unwrap();
    let x = int(-4);
    let mut group = c.benchmark_group("ratio trajectory");
    group.sample_size(10);
    for n in [64usize, 256] {
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| ratio_trajectory(&spec, &x, &[black_box(n)]).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, construction, trajectory);
criterion_main!(benches);
