//! Compares the default (rayon-split) exhaustive search against its
//! sequential fallback on the same boxes. Run with
//! `cargo bench -p delpezzo`; add `--no-default-features` to confirm the
//! fallback is what the default engine degrades to without rayon.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use delpezzo::nfdescent::{exhaustive_search, exhaustive_search_sequential, SearchBounds};

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive_search");
    group.sample_size(10);
    for a_max in [6, 8, 10] {
        let bounds = SearchBounds::for_a_max(a_max);
        group.bench_with_input(
            BenchmarkId::new("sequential", a_max),
            &bounds,
            |bench, bounds| bench.iter(|| exhaustive_search_sequential(bounds)),
        );
        group.bench_with_input(
            BenchmarkId::new("default", a_max),
            &bounds,
            |bench, bounds| bench.iter(|| exhaustive_search(bounds)),
        );
    }
    group.finish();
}

criterion_group!(benches, bench_search);
criterion_main!(benches);
