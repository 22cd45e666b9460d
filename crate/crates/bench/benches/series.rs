use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use riordan::fps::{solve_fixpoint, Series};
use riordan_bench::{catalan_series, z_catalan};

fn bench_series(c: &mut Criterion) {
    let mut group = c.benchmark_group("series");
    for n in [16usize, 32, 64] {
        let a = catalan_series(n);
        let f = z_catalan(n);
        group.bench_with_input(BenchmarkId::new("mul", n), &n, |b, _| b.iter(|| black_box(&a).mul_series(&a)));
        group.bench_with_input(BenchmarkId::new("compose", n), &n, |b, _| {
            b.iter(|| black_box(&a).compose(&f).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("comp_inverse", n), &n, |b, _| {
            b.iter(|| black_box(&f).comp_inverse().unwrap())
        });
        group.bench_with_input(BenchmarkId::new("solve_fixpoint", n), &n, |b, &n| {
            b.iter(|| {
                solve_fixpoint(
                    |g| Ok(&Series::one(g.order()) + &g.mul_series(g).shift_up(1).truncate(g.order())),
                    &Series::one(0),
                    n,
                )
                .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_series);
criterion_main!(benches);
