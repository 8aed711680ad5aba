use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use excision_bench::{algebra, matrix_split, triangular_corner};
use excision_core::algebra::Preset;
use excision_core::complexes::random::{random_ses, SesBudget};
use excision_core::complexes::{homology, long_exact_sequence};
use excision_core::excision::excision_report;
use excision_core::hochschild::{cyclic_complex, hochschild_complex};

fn presets(c: &mut Criterion) {
    let mut g = c.benchmark_group("hochschild");
    for p in [Preset::Matrix { k: 2 }, Preset::TruncatedPoly { m: 3 }, Preset::UpperTriangular { k: 2 }] {
        let alg = algebra(p.clone());
        g.bench_with_input(BenchmarkId::from_parameter(p.label()), &alg, |b, alg| {
            b.iter(|| homology(&hochschild_complex(black_box(alg), 3), 3))
        });
    }
    g.finish();
    c.bench_function("cyclic/matrix(2)", |b| {
        let alg = algebra(Preset::Matrix { k: 2 });
        b.iter(|| homology(&cyclic_complex(black_box(&alg), 3).unwrap().complex, 3))
    });
}

fn reports(c: &mut Criterion) {
    let mut g = c.benchmark_group("excision_report");
    g.sample_size(10);
    g.bench_function("triangular-corner", |b| {
        let ext = triangular_corner();
        b.iter(|| excision_report(black_box(&ext), 3).unwrap())
    });
    g.bench_function("matrix-split", |b| {
        let ext = matrix_split();
        b.iter(|| excision_report(black_box(&ext), 2).unwrap())
    });
    g.finish();
}

fn snake(c: &mut Criterion) {
    let ses: Vec<_> = (0..20).map(|s| random_ses(s, SesBudget::DEFAULT)).collect();
    c.bench_function("long_exact_sequence/20 random", |b| {
        b.iter(|| {
            for s in &ses {
                black_box(long_exact_sequence(s, s.top()).unwrap());
            }
        })
    });
}

criterion_group!(benches, presets, reports, snake);
criterion_main!(benches);
