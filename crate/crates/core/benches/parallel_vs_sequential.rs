use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use morita_core::fpgroup::presentation::{letter, GroupPresentation};
use morita_core::fpgroup::{hom_count, hom_count_sequential};
use morita_core::group::FiniteGroup;

/// `[a, b][c, d]`, the genus-two surface group.
fn genus_two() -> GroupPresentation {
    let (a, b, c, d) = (letter(0, true), letter(1, true), letter(2, true), letter(3, true));
    GroupPresentation::new(4, vec![vec![a, b, -a, -b, c, d, -c, -d]]).unwrap()
}

fn bench(c: &mut Criterion) {
    let cases = [
        ("free3-S4", GroupPresentation::free(3), FiniteGroup::symmetric(4)),
        ("genus2-S3", genus_two(), FiniteGroup::symmetric(3)),
        ("genus2-D8", genus_two(), FiniteGroup::dihedral(4)),
    ];
    let mut group = c.benchmark_group("hom_count");
    group.sample_size(10);
    for (name, p, t) in &cases {
        group.bench_with_input(BenchmarkId::new("parallel", name), &(p, t), |b, (p, t)| b.iter(|| hom_count(black_box(p), black_box(t)).unwrap()));
        group.bench_with_input(BenchmarkId::new("sequential", name), &(p, t), |b, (p, t)| {
            b.iter(|| hom_count_sequential(black_box(p), black_box(t)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
