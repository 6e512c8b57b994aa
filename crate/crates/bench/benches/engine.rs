use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use spiders::fibre::{evaluate, span_saturate};
use spiders::rewrite::normalize;
use spiders::verify::{even_generators, gram};
use spiders_bench::{family, walsh_context};

fn bench_evaluate(c: &mut Criterion) {
    let diagrams = family(12, 20);
    let mut group = c.benchmark_group("evaluate");
    for k in [2, 3] {
        let ctx = walsh_context(k);
        group.bench_with_input(BenchmarkId::from_parameter(1 << k), &ctx, |b, ctx| {
            b.iter(|| diagrams.iter().map(|d| evaluate(black_box(d), ctx).unwrap()).count())
        });
    }
    group.finish();
}

fn bench_normalize(c: &mut Criterion) {
    let diagrams = family(12, 20);
    c.bench_function("normalize", |b| {
        b.iter(|| diagrams.iter().map(|d| normalize(black_box(d), 4).unwrap()).count())
    });
}

fn bench_span(c: &mut Criterion) {
    let ctx = walsh_context(2);
    let gens = even_generators();
    let mut group = c.benchmark_group("span");
    group.sample_size(10);
    group.bench_function("(2,2) at N=4", |b| b.iter(|| span_saturate(&ctx, &gens, (2, 2), 4).unwrap().rank));
    group.finish();
}

fn bench_gram(c: &mut Criterion) {
    c.bench_function("gram N=8", |b| b.iter(|| gram(black_box(8)).unwrap()));
}

criterion_group!(benches, bench_evaluate, bench_normalize, bench_span, bench_gram);
criterion_main!(benches);
