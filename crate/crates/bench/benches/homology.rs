use criterion::{black_box, criterion_group, criterion_main, Criterion};
use superschur::{center, derived, multiplier_dim};
use superschur_bench::{cover, heisenberg_family};

fn multiplier(c: &mut Criterion) {
    let mut group = c.benchmark_group("multiplier");
    for total in [3, 5] {
        for (name, h) in heisenberg_family(total) {
            group.bench_function(&name, |b| b.iter(|| multiplier_dim(black_box(&h)).unwrap()));
        }
    }
    group.finish();
}

fn cover_invariants(c: &mut Criterion) {
    let k = cover(2, 1);
    c.bench_function("K(2,1) center+derived", |b| {
        b.iter(|| (center(black_box(&k)).unwrap(), derived(black_box(&k)).unwrap()))
    });
    c.bench_function("K(2,1) multiplier", |b| b.iter(|| multiplier_dim(black_box(&k)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = multiplier, cover_invariants
}
criterion_main!(benches);
