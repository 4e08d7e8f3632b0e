//! Brute-force checks of the total positivity, sign-change and shape
//! preservation results on desk-scale grids.

use qtrig_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const NS: [usize; 4] = [1, 2, 3, 4];
const QS: [f64; 4] = [0.5, 1.0, 1.5, 3.0];

fn q(v: f64) -> QParam {
    QParam::new(v).unwrap()
}

/// Six equally spaced interior points.
fn interior(iv: &Interval) -> Vec<f64> {
    (1..=6).map(|j| iv.a() + iv.len() * j as f64 / 7.0).collect()
}

/// One quarter-period interval per residue class mod 4.
fn residue_intervals() -> Vec<Interval> {
    vec![
        Interval::quarter_period(0),
        Interval::quarter_period(1),
        Interval::quarter_period(2),
        Interval::quarter_period(-1),
    ]
}

#[test]
fn quantum_basis_is_totally_positive() {
    for iv in residue_intervals() {
        for n in NS {
            for qv in QS {
                let m = collocation(&BasisFamily::Quantum, n, q(qv), &iv, &interior(&iv)).unwrap();
                let r = total_positivity_check(&m, 1e-9).unwrap();
                assert!(r.is_tp, "n={n} q={qv} [{}, {}]: {r:?}", iv.a(), iv.b());
                assert_eq!(r.minors_checked as u128, minor_count(n + 1, 6));
            }
        }
    }
}

#[test]
fn rational_basis_is_normalized_totally_positive() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for iv in residue_intervals() {
        for n in NS {
            for qv in QS {
                let w = WeightVector::new((0..=n).map(|_| rng.gen_range(0.1..5.0)).collect()).unwrap();
                let m = collocation(&BasisFamily::Rational(w), n, q(qv), &iv, &interior(&iv)).unwrap();
                for s in m.column_sums() {
                    assert!((s - 1.0).abs() <= 1e-12);
                }
                assert!(total_positivity_check(&m, 1e-9).unwrap().is_tp);
            }
        }
    }
}

#[test]
fn positive_function_and_diagonal_factors_preserve_tp() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for iv in residue_intervals() {
        for n in NS {
            for qv in QS {
                let m = collocation(&BasisFamily::Quantum, n, q(qv), &iv, &interior(&iv)).unwrap();
                let before = total_positivity_check(&m, 1e-9).unwrap().is_tp;
                let shift = rng.gen_range(0.1..2.0);
                let g = m.scale_by_function(|x| shift + x.sin().powi(2));
                assert_eq!(total_positivity_check(&g, 1e-9).unwrap().is_tp, before);
                let diag: Vec<f64> = (0..=n).map(|_| rng.gen_range(0.01..20.0)).collect();
                let d = m.scale_rows(&diag).unwrap();
                assert_eq!(total_positivity_check(&d, 1e-9).unwrap().is_tp, before);
            }
        }
    }
}

#[test]
fn negative_q_breaks_positivity() {
    let qn = q(-0.5);
    let mut witnessed = false;
    for iv in residue_intervals() {
        for n in NS {
            let m = collocation(&BasisFamily::Quantum, n, qn, &iv, &interior(&iv)).unwrap();
            let report = total_positivity_check(&m, 1e-9).unwrap();
            let negative = (0..m.nrows()).any(|i| m.row(i).iter().any(|&v| v < -1e-14));
            if !report.is_tp {
                assert!(report.witness.is_some());
                assert!(report.worst_scaled < -1e-9);
            }
            witnessed |= !report.is_tp || negative;
        }
    }
    assert!(witnessed);
}

#[test]
fn sign_changes_bounded_by_controls() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let iv = Interval::quarter_period(0);
    for _ in 0..100 {
        let n = rng.gen_range(1..=5);
        let controls: Vec<f64> = (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let bound = sign_changes_seq(&SignSequence::new(controls.clone()));
        for qv in [0.5, 1.0, 2.0] {
            let s = sample_curve(
                &ControlPolygon::from_scalars(&controls).unwrap(),
                q(qv),
                &iv,
                512,
                EvalMethod::Direct,
            )
            .unwrap();
            let values: Vec<f64> = s.iter().map(|s| s.point[0]).collect();
            assert!(sign_changes_function(&values) <= bound, "controls {controls:?} q={qv}");
        }
    }
}

fn random_polygon(rng: &mut ChaCha8Rng, n: usize) -> ControlPolygon {
    ControlPolygon::new(
        (0..=n)
            .map(|_| vec![rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0)])
            .collect(),
    )
    .unwrap()
}

#[test]
fn rational_curves_stay_in_hull_and_diminish_variation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for k in 0..4 {
        let iv = Interval::quarter_period(k);
        for _ in 0..20 {
            let n = rng.gen_range(1..=5);
            let polygon = random_polygon(&mut rng, n);
            let w = WeightVector::new((0..=n).map(|_| rng.gen_range(0.1..5.0)).collect()).unwrap();
            let curve = RationalCurve::new(polygon.clone(), w, q(rng.gen_range(0.2..4.0)), iv).unwrap();
            assert!(curve.shape_guarantee());

            let ctrl: Vec<Point2> = polygon.points().iter().map(|p| [p[0], p[1]]).collect();
            let hull = convex_hull(&ctrl);
            let samples = curve.sample(2048).unwrap();
            let pts: Vec<Point2> = samples.iter().map(|s| [s.point[0], s.point[1]]).collect();
            assert!(pts.iter().all(|&p| in_convex_hull(&hull, p, 1e-12)));

            for _ in 0..5 {
                let angle: f64 = rng.gen_range(0.0..std::f64::consts::PI);
                let line = Line::new(
                    [rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)],
                    [angle.cos(), angle.sin()],
                )
                .unwrap();
                assert!(line.crossings(&pts) <= line.crossings(&ctrl));
            }
        }
    }
}
