//! Wall-clock behavior of the full pipeline as p and the genus grow, plus
//! the enumeration oracle for contrast.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperzeta::{assemble_zeta, naive_count, BasisKind, LiftedCurve, DEFAULT_BUDGET};
use hyperzeta_bench::sample_curve;

fn bench_p_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("genus2_p_scaling");
    group.sample_size(10);
    for p in [31u64, 61, 127] {
        let spec = sample_curve(0xB0 + p, p, 2);
        group.bench_with_input(BenchmarkId::from_parameter(p), &spec, |b, spec| {
            b.iter(|| {
                let curve = LiftedCurve::validate(spec, None).unwrap();
                assemble_zeta(&curve, BasisKind::YPowerOne).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_genus_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("f7_genus_scaling");
    group.sample_size(10);
    for genus in 1usize..=4 {
        let spec = sample_curve(0xB1 + genus as u64, 7, genus);
        group.bench_with_input(BenchmarkId::from_parameter(genus), &spec, |b, spec| {
            b.iter(|| {
                let curve = LiftedCurve::validate(spec, None).unwrap();
                assemble_zeta(&curve, BasisKind::YPowerOne).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_enumeration");
    group.sample_size(10);
    for p in [31u64, 127] {
        let spec = sample_curve(0xB2 + p, p, 2);
        group.bench_with_input(BenchmarkId::from_parameter(p), &spec, |b, spec| {
            b.iter(|| naive_count(spec, &[0, 1], 1, DEFAULT_BUDGET).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_p_scaling, bench_genus_scaling, bench_oracle);
criterion_main!(benches);
