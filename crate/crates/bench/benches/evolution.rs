//! Iterated carrier evolution against linear evolution in angle variables.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use pbbs_core::dynamics::{self, Path};
use pbbs_core::{kkr, periods, scattering};

const PATH: &str = "2211221112122111221";

fn evolution(c: &mut Criterion) {
    let p: Path = PATH.parse().unwrap();
    let mut group = c.benchmark_group("evolution");
    for steps in [10u64, 100, 1000, 10_000] {
        group.bench_with_input(BenchmarkId::new("iterated", steps), &steps, |b, &t| {
            b.iter(|| dynamics::evolve_steps(black_box(&p), 2, t))
        });
        group.bench_with_input(BenchmarkId::new("linear", steps), &steps, |b, &t| {
            b.iter(|| scattering::fast_evolve(black_box(&p), 2, t))
        });
    }
    group.finish();
}

fn huge_times(c: &mut Criterion) {
    let p: Path = PATH.parse().unwrap();
    let t = BigInt::from(10).pow(40);
    c.bench_function("linear 10^40 steps", |b| {
        b.iter(|| scattering::fast_evolve(black_box(&p), 3, t.clone()))
    });
}

fn transforms(c: &mut Criterion) {
    let p: Path = "1122111212211122122".parse().unwrap();
    let rc = kkr::kkr_map(&p).unwrap();
    let m = rc.action().unwrap();
    c.bench_function("kkr map", |b| b.iter(|| kkr::kkr_map(black_box(&p))));
    c.bench_function("kkr inverse", |b| b.iter(|| kkr::kkr_inverse(black_box(&rc))));
    c.bench_function("generic period", |b| {
        b.iter(|| periods::generic_period(black_box(&m), 3))
    });
}

criterion_group!(benches, evolution, huge_times, transforms);
criterion_main!(benches);
