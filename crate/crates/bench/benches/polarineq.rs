use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use polarineq_core::{
    build_instance, check_inequality, circle_extremum, find_roots, polar_chain, random_zeros_poly, CheckParams,
    Complex64, ExtremumKind, GenConfig, GenMode, InequalityId, PolarSpec, Polynomial,
};

fn sample(n: usize, mode: GenMode) -> Polynomial {
    random_zeros_poly(&GenConfig::new(n, 1.0, 3, mode)).unwrap()
}

fn roots(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_roots");
    for n in [4, 12, 32] {
        let p = sample(n, GenMode::Unconstrained);
        group.bench_with_input(BenchmarkId::from_parameter(n), &p, |b, p| b.iter(|| find_roots(black_box(p))));
    }
    group.finish();
}

fn extrema(c: &mut Criterion) {
    let mut group = c.benchmark_group("circle_extremum");
    for n in [4, 12, 32] {
        let p = sample(n, GenMode::Unconstrained);
        let eps = 1e-10 * p.abs_coeff_sum(1.0);
        group.bench_with_input(BenchmarkId::new("max", n), &p, |b, p| {
            b.iter(|| circle_extremum(black_box(p), 1.0, ExtremumKind::Max, eps))
        });
        group.bench_with_input(BenchmarkId::new("min", n), &p, |b, p| {
            b.iter(|| circle_extremum(black_box(p), 1.0, ExtremumKind::Min, eps))
        });
    }
    group.finish();
}

fn chain(c: &mut Criterion) {
    let p = sample(12, GenMode::ZerosInside);
    let alphas = vec![Complex64::new(2.0, 0.5), Complex64::new(-1.5, 1.0), Complex64::new(0.0, 3.0)];
    let spec = PolarSpec::new(12, 1.0, alphas, Complex64::new(0.3, 0.0));
    c.bench_function("polar_chain/n12_s3", |b| b.iter(|| polar_chain(black_box(&p), &spec)));
}

fn checker(c: &mut Criterion) {
    let p = sample(8, GenMode::ZerosOutsideOpenDisk);
    let spec = PolarSpec::new(8, 1.0, vec![Complex64::new(2.0, 1.0)], Complex64::new(0.0, 0.0));
    let params = CheckParams::default();
    let mut group = c.benchmark_group("check_inequality");
    for id in [InequalityId::AE, InequalityId::TE2] {
        let inst = build_instance(id, &p, None, &spec).unwrap();
        group.bench_function(id.to_string(), |b| b.iter(|| check_inequality(black_box(&inst), &params)));
    }
    group.finish();
}

criterion_group!(benches, roots, extrema, chain, checker);
criterion_main!(benches);
