//! Sequential vs rayon enumeration of labelings.

use abtv::enumerate::{count_kernel_brute_with, exponential_double_sum};
use abtv::{build_sphere3_figure, build_sphere_minimal, tensor_product, EnumerationCap, Strategy};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

fn strategies() -> Vec<(&'static str, Strategy)> {
    let mut s = vec![("sequential", Strategy::Sequential)];
    #[cfg(feature = "parallel")]
    s.push(("parallel", Strategy::Parallel));
    s
}

fn kernel_count(c: &mut Criterion) {
    let s1s2 = tensor_product(
        &build_sphere_minimal(1).unwrap(),
        &build_sphere_minimal(2).unwrap(),
    );
    // d^1 of S^1 x S^2: 8 columns.
    let d1 = s1s2.coboundary(1).unwrap();
    let mut group = c.benchmark_group("cocycle_count_s1xs2_p1");
    group.sample_size(10);
    for k in [4u64, 6] {
        for (name, strategy) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| {
                b.iter(|| {
                    count_kernel_brute_with(black_box(&d1), k, EnumerationCap::DEFAULT, strategy)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn double_sum(c: &mut Criterion) {
    let fig = build_sphere3_figure();
    let d1 = fig.coboundary(1).unwrap();
    let mut group = c.benchmark_group("double_sum_s3_figure_p1");
    group.sample_size(10);
    for k in [3u64, 5] {
        for (name, strategy) in strategies() {
            group.bench_with_input(BenchmarkId::new(name, k), &k, |b, &k| {
                b.iter(|| {
                    exponential_double_sum(black_box(&d1), k, EnumerationCap::DEFAULT, strategy)
                        .unwrap()
                })
            });
        }
    }
    group.finish();
}

criterion_group!(benches, kernel_count, double_sum);
criterion_main!(benches);
