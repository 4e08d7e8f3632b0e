use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtrig_core::{
    collocation, total_positivity_check, BasisFamily, ControlPolygon, EvalMethod, Interval, QParam, QTrigBasis,
    QTrigCurve, RationalCurve, Recurrence, WeightVector,
};

const X: f64 = 0.7;

fn polygon(n: usize) -> ControlPolygon {
    ControlPolygon::new((0..=n).map(|k| vec![k as f64, ((k * 7) % 5) as f64]).collect()).unwrap()
}

fn bench_basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("basis");
    let q = QParam::new(1.5).unwrap();
    for n in [3, 6, 10] {
        let basis = QTrigBasis::new(n, q, Interval::quarter_period(0)).unwrap();
        group.bench_with_input(BenchmarkId::new("direct", n), &basis, |b, basis| {
            b.iter(|| basis.values_direct(black_box(X)))
        });
        group.bench_with_input(BenchmarkId::new("recurrence1", n), &basis, |b, basis| {
            b.iter(|| basis.values_recurrence(black_box(X), Recurrence::First))
        });
        group.bench_with_input(BenchmarkId::new("recurrence2", n), &basis, |b, basis| {
            b.iter(|| basis.values_recurrence(black_box(X), Recurrence::Second))
        });
    }
    group.finish();
}

fn bench_curve(c: &mut Criterion) {
    let mut group = c.benchmark_group("curve");
    let q = QParam::new(1.5).unwrap();
    for n in [3, 6, 10] {
        let curve = QTrigCurve::new(polygon(n), q, Interval::quarter_period(0)).unwrap();
        for (name, method) in [
            ("direct", EvalMethod::Direct),
            ("alg1", EvalMethod::Alg1),
            ("alg2", EvalMethod::Alg2),
        ] {
            group.bench_with_input(BenchmarkId::new(name, n), &curve, |b, curve| {
                b.iter(|| curve.evaluate(black_box(X), method))
            });
        }
        let rational =
            RationalCurve::new(polygon(n), WeightVector::uniform(n), q, Interval::quarter_period(0)).unwrap();
        group.bench_with_input(BenchmarkId::new("rational", n), &rational, |b, curve| {
            b.iter(|| curve.evaluate(black_box(X)).unwrap())
        });
    }
    group.finish();
}

fn bench_total_positivity(c: &mut Criterion) {
    let mut group = c.benchmark_group("total_positivity");
    let iv = Interval::quarter_period(0);
    let points: Vec<f64> = (1..=6).map(|j| iv.a() + iv.len() * j as f64 / 7.0).collect();
    for n in [2, 4] {
        let m = collocation(&BasisFamily::Quantum, n, QParam::new(2.0).unwrap(), &iv, &points).unwrap();
        group.bench_with_input(BenchmarkId::new("six_points", n), &m, |b, m| {
            b.iter(|| total_positivity_check(m, 1e-9).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_basis, bench_curve, bench_total_positivity);
criterion_main!(benches);
