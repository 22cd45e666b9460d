use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use riordan::riordan::b_function_from_f;
use riordan_bench::family;

fn bench_arrays(c: &mut Criterion) {
    let mut group = c.benchmark_group("arrays");
    for n in [12usize, 24, 42] {
        let inst = family("catalan", n + 1);
        let array = inst.array();
        group.bench_with_input(BenchmarkId::new("build_matrix", n), &n, |b, &n| {
            b.iter(|| black_box(&array).build_matrix(n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("is_pseudo_involution", n), &n, |b, &n| {
            b.iter(|| black_box(&array).is_pseudo_involution(n))
        });
        group.bench_with_input(BenchmarkId::new("b_function_from_f", n), &n, |b, _| {
            b.iter(|| b_function_from_f(black_box(&inst.f)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_arrays);
criterion_main!(benches);
