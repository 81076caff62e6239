use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qmeas::harness::{run_batch_sequential, Tolerances};

fn batch(c: &mut Criterion) {
    let tol = Tolerances::default();
    let mut group = c.benchmark_group("batch");
    group.sample_size(10);
    for seeds in [16u64, 64] {
        group.bench_with_input(BenchmarkId::new("sequential", seeds), &seeds, |b, &n| {
            b.iter(|| run_batch_sequential(0..n, 6, 4, &tol))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", seeds), &seeds, |b, &n| {
            b.iter(|| qmeas::harness::run_batch_parallel(0..n, 6, 4, &tol))
        });
    }
    group.finish();
}

criterion_group!(benches, batch);
criterion_main!(benches);
