use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dua_core::algebra::AlgebraSpec;
use dua_core::coeff::{FieldDescriptor, MultiPoly};
use dua_core::embeddings::theta_check;
use dua_core::par::Exec;
use dua_core::random::random_pairs;
use dua_core::structure::normal_search;

fn spec() -> std::sync::Arc<AlgebraSpec> {
    AlgebraSpec::from_roots(1, FieldDescriptor::Rational, 2.into(), 3.into(), MultiPoly::var(1, 0)).unwrap()
}

fn bench_exec(c: &mut Criterion) {
    let s = spec();
    let pairs = random_pairs(&s, 7, 200, 3);
    let mut g = c.benchmark_group("exec");
    g.sample_size(10);
    for (name, exec) in [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)] {
        g.bench_with_input(BenchmarkId::new("products", name), &exec, |b, exec| {
            b.iter(|| exec.map(&pairs, |(x, y)| x * y))
        });
        g.bench_with_input(BenchmarkId::new("theta_check", name), &exec, |b, exec| {
            b.iter(|| theta_check(&s, 4, 50, 1, *exec).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("normal_search", name), &exec, |b, exec| {
            b.iter(|| normal_search(&s, 3, *exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_exec);
criterion_main!(benches);
