//! Total positivity and sign-change machinery.
//!
//! Total positivity is checked by brute force: every square minor of a
//! collocation matrix is evaluated. This is exponential in the matrix size,
//! so enumeration is capped at [`MINOR_CAP`] minors.

use crate::basis::{classical_trig_basis, QTrigBasis};
use crate::error::{Error, Result};
use crate::kernel::Interval;
use crate::qcalculus::QParam;
use crate::rational::{RationalBasis, WeightVector};

/// Upper bound on the number of minors a single check will enumerate.
pub const MINOR_CAP: u128 = 1_000_000;

/// Relative zero tolerance applied to sign sequences by default.
pub const DEFAULT_ZERO_TOLERANCE: f64 = 1e-12;

/// Slack when checking that collocation points lie inside the interval.
const INTERVAL_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub enum BasisFamily {
    Quantum,
    /// Circular Bernstein basis; `q` is ignored.
    Classical,
    Rational(WeightVector),
}

/// `entries[i][j] = phi_i(x_j)`: rows index basis functions, columns points.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
    points: Vec<f64>,
}

impl CollocationMatrix {
    /// Builds a matrix from explicit rows; `points` label the columns.
    pub fn from_rows(rows: Vec<Vec<f64>>, points: Vec<f64>) -> Result<Self> {
        check_increasing(&points)?;
        let cols = points.len();
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: r.len(),
            });
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("collocation entries must be finite".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
            points,
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_sums(&self) -> Vec<f64> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Multiplies every basis function by `g`, i.e. column `j` by `g(x_j)`.
    pub fn scale_by_function(&self, g: impl Fn(f64) -> f64) -> Self {
        let mut out = self.clone();
        for j in 0..self.cols {
            let factor = g(self.points[j]);
            for i in 0..self.rows {
                out.entries[i * self.cols + j] *= factor;
            }
        }
        out
    }

    /// Left-multiplies by `diag(diagonal)`.
    pub fn scale_rows(&self, diagonal: &[f64]) -> Result<Self> {
        if diagonal.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                found: diagonal.len(),
            });
        }
        let mut out = self.clone();
        for (i, d) in diagonal.iter().enumerate() {
            for v in &mut out.entries[i * self.cols..(i + 1) * self.cols] {
                *v *= d;
            }
        }
        Ok(out)
    }
}

fn check_increasing(points: &[f64]) -> Result<()> {
    match points.windows(2).position(|w| !(w[0] < w[1])) {
        Some(i) => Err(Error::NonIncreasingPoints { index: i + 1 }),
        None => Ok(()),
    }
}

pub fn collocation(
    family: &BasisFamily,
    n: usize,
    q: QParam,
    interval: &Interval,
    points: &[f64],
) -> Result<CollocationMatrix> {
    check_increasing(points)?;
    if let Some(&x) = points
        .iter()
        .find(|&&x| x < interval.a() - INTERVAL_SLACK || x > interval.b() + INTERVAL_SLACK)
    {
        return Err(Error::PointOutsideInterval {
            x,
            a: interval.a(),
            b: interval.b(),
        });
    }
    let columns: Vec<Vec<f64>> = match family {
        BasisFamily::Quantum => {
            let basis = QTrigBasis::new(n, q, *interval)?;
            points.iter().map(|&x| basis.values_direct(x).values).collect()
        }
        BasisFamily::Classical => points
            .iter()
            .map(|&x| (0..=n).map(|k| classical_trig_basis(n, k, x, interval)).collect())
            .collect::<Result<_>>()?,
        BasisFamily::Rational(weights) => {
            let basis = RationalBasis::new(n, q, *interval, weights.clone())?;
            points
                .iter()
                .map(|&x| basis.values(x).map(|v| v.values))
                .collect::<Result<_>>()?
        }
    };
    let rows = (0..=n).map(|i| columns.iter().map(|c| c[i]).collect()).collect();
    CollocationMatrix::from_rows(rows, points.to_vec())
}

/// Row and column index sets of a square submatrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorIndex {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TPReport {
    pub is_tp: bool,
    pub minors_checked: u64,
    /// Determinant of the minor with the smallest scaled value.
    pub worst_minor: f64,
    /// That determinant divided by the product of its rows' max-norms.
    pub worst_scaled: f64,
    /// The offending minor when `is_tp` is false.
    pub witness: Option<MinorIndex>,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of square minors of an `rows x cols` matrix.
pub fn minor_count(rows: usize, cols: usize) -> u128 {
    (1..=rows.min(cols))
        .map(|k| binomial(rows, k) * binomial(cols, k))
        .sum()
}

/// Calls `f` with every `k`-subset of `0..n` in lexicographic order.
fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(pos) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[pos] += 1;
        for i in pos + 1..k {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// Determinant by Gaussian elimination with partial pivoting; `m` is
/// row-major `k x k` and is overwritten.
fn determinant(m: &mut [f64], k: usize) -> f64 {
    let mut det = 1.0;
    for c in 0..k {
        let pivot = (c..k)
            .max_by(|&i, &j| m[i * k + c].abs().total_cmp(&m[j * k + c].abs()))
            .unwrap();
        if m[pivot * k + c] == 0.0 {
            return 0.0;
        }
        if pivot != c {
            for j in 0..k {
                m.swap(c * k + j, pivot * k + j);
            }
            det = -det;
        }
        let p = m[c * k + c];
        det *= p;
        for i in c + 1..k {
            let f = m[i * k + c] / p;
            if f != 0.0 {
                for j in c..k {
                    m[i * k + j] -= f * m[c * k + j];
                }
            }
        }
    }
    det
}

/// Enumerates every square minor of `matrix`.
///
/// A minor passes when `det >= -tolerance * scale`, where `scale` is the
/// product of the max-norms of the submatrix rows.
pub fn total_positivity_check(matrix: &CollocationMatrix, tolerance: f64) -> Result<TPReport> {
    let count = minor_count(matrix.rows, matrix.cols);
    if count > MINOR_CAP {
        return Err(Error::SizeCapExceeded { count, cap: MINOR_CAP });
    }
    let mut report = TPReport {
        is_tp: true,
        minors_checked: 0,
        worst_minor: f64::INFINITY,
        worst_scaled: f64::INFINITY,
        witness: None,
    };
    let mut worst_index: Option<MinorIndex> = None;
    let mut buf = Vec::new();
    for order in 1..=matrix.rows.min(matrix.cols) {
        for_each_subset(matrix.rows, order, |rows| {
            for_each_subset(matrix.cols, order, |cols| {
                buf.clear();
                let mut scale = 1.0;
                for &i in rows {
                    let start = buf.len();
                    buf.extend(cols.iter().map(|&j| matrix.get(i, j)));
                    scale *= buf[start..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
                }
                let det = determinant(&mut buf, order);
                let scaled = if scale > 0.0 { det / scale } else { 0.0 };
                report.minors_checked += 1;
                if scaled < report.worst_scaled {
                    report.worst_scaled = scaled;
                    report.worst_minor = det;
                    worst_index = Some(MinorIndex {
                        rows: rows.to_vec(),
                        cols: cols.to_vec(),
                    });
                }
            });
        });
    }
    if report.minors_checked == 0 {
        report.worst_minor = 0.0;
        report.worst_scaled = 0.0;
    }
    report.is_tp = !(report.worst_scaled < -tolerance);
    if !report.is_tp {
        report.witness = worst_index;
    }
    Ok(report)
}

/// A real sequence together with the magnitude below which entries count
/// as zero.
#[derive(Debug, Clone, PartialEq)]
pub struct SignSequence {
    pub values: Vec<f64>,
    pub zero_tolerance: f64,
}

impl SignSequence {
    /// Uses a zero tolerance of `1e-12 * max|v|`.
    pub fn new(values: Vec<f64>) -> Self {
        let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        Self {
            zero_tolerance: DEFAULT_ZERO_TOLERANCE * max,
            values,
        }
    }

    pub fn with_tolerance(values: Vec<f64>, zero_tolerance: f64) -> Result<Self> {
        if !(zero_tolerance >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "zero tolerance must be non-negative, got {zero_tolerance}"
            )));
        }
        Ok(Self { values, zero_tolerance })
    }
}

/// Strict sign changes `S^-` after discarding near-zero entries.
pub fn sign_changes_seq(seq: &SignSequence) -> usize {
    let mut last: Option<bool> = None;
    let mut changes = 0;
    for &v in &seq.values {
        if v.abs() <= seq.zero_tolerance || v.is_nan() {
            continue;
        }
        let positive = v > 0.0;
        if last.is_some_and(|p| p != positive) {
            changes += 1;
        }
        last = Some(positive);
    }
    changes
}

/// Sign changes of a function from ordered samples; a lower bound on `S^-(f)`.
pub fn sign_changes_function(samples: &[f64]) -> usize {
    sign_changes_seq(&SignSequence::new(samples.to_vec()))
}

/// Checks the monomial basis `1, x, ..., x^n` on nonnegative nodes.
pub fn monomial_tp_reference(n: usize, points: &[f64]) -> Result<TPReport> {
    if n > 4 || points.len() > 6 {
        return Err(Error::InvalidArgument(format!(
            "monomial reference is limited to n <= 4 and 6 points (got n = {n}, {} points)",
            points.len()
        )));
    }
    if let Some(x) = points.iter().find(|&&x| !(x >= 0.0)) {
        return Err(Error::InvalidArgument(format!("monomial nodes must be >= 0, got {x}")));
    }
    let rows = (0..=n)
        .map(|i| points.iter().map(|x| x.powi(i as i32)).collect())
        .collect();
    let m = CollocationMatrix::from_rows(rows, points.to_vec())?;
    total_positivity_check(&m, 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    fn quarter() -> Interval {
        Interval::new(0.0, FRAC_PI_2).unwrap()
    }

    #[test]
    fn subsets_enumerated_in_order() {
        let mut seen = Vec::new();
        for_each_subset(4, 2, |s| seen.push(s.to_vec()));
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[0], vec![0, 1]);
        assert_eq!(seen[5], vec![2, 3]);
        let mut count = 0;
        for_each_subset(3, 4, |_| count += 1);
        assert_eq!(count, 0);
    }

    #[test]
    fn determinant_small_cases() {
        let mut m = [1.0, 2.0, 3.0, 1.0];
        assert_eq!(determinant(&mut m, 2), -5.0);
        let mut m = [2.0, 0.0, 1.0, 1.0, 3.0, 2.0, 1.0, 1.0, 2.0];
        assert!((determinant(&mut m, 3) - 6.0).abs() < 1e-14);
        let mut m = [1.0, 2.0, 2.0, 4.0];
        assert_eq!(determinant(&mut m, 2), 0.0);
    }

    #[test]
    fn collocation_examples() {
        let pts = [0.3, 1.1];
        let m = collocation(&BasisFamily::Quantum, 1, QParam::ONE, &quarter(), &pts).unwrap();
        for (j, &x) in pts.iter().enumerate() {
            assert!((m.get(0, j) - x.cos()).abs() < 1e-15);
            assert!((m.get(1, j) - x.sin()).abs() < 1e-15);
        }

        let m = collocation(&BasisFamily::Quantum, 0, QParam::ONE, &quarter(), &[0.1, 0.5, 0.9]).unwrap();
        assert_eq!((m.nrows(), m.ncols()), (1, 3));
        assert!(m.row(0).iter().all(|&v| v == 1.0));

        let pts: Vec<f64> = (1..=5).map(|j| j as f64 * FRAC_PI_2 / 6.0).collect();
        let m = collocation(&BasisFamily::Quantum, 3, q(2.0), &quarter(), &pts).unwrap();
        for i in 0..=3 {
            for (j, &x) in pts.iter().enumerate() {
                let d = crate::basis::basis_value_direct(3, i, x, q(2.0), &quarter()).unwrap();
                assert_eq!(m.get(i, j), d);
            }
        }
    }

    #[test]
    fn collocation_errors() {
        assert!(matches!(
            collocation(&BasisFamily::Quantum, 2, q(2.0), &quarter(), &[0.1, 0.1]),
            Err(Error::NonIncreasingPoints { index: 1 })
        ));
        assert!(matches!(
            collocation(&BasisFamily::Quantum, 2, q(2.0), &quarter(), &[0.1, 2.0]),
            Err(Error::PointOutsideInterval { .. })
        ));
        let singular = Interval::new(0.0, std::f64::consts::PI).unwrap();
        assert!(matches!(
            collocation(&BasisFamily::Quantum, 2, QParam::ONE, &singular, &[0.1, 0.2]),
            Err(Error::SingularInterval { .. })
        ));
    }

    #[test]
    fn tp_examples() {
        let m = CollocationMatrix::from_rows(vec![vec![0.5]], vec![0.0]).unwrap();
        let r = total_positivity_check(&m, 1e-9).unwrap();
        assert!(r.is_tp);
        assert_eq!(r.minors_checked, 1);

        let (x0, x1) = (0.2, 1.3);
        let m = collocation(&BasisFamily::Quantum, 1, QParam::ONE, &quarter(), &[x0, x1]).unwrap();
        let r = total_positivity_check(&m, 1e-9).unwrap();
        assert!(r.is_tp);
        assert_eq!(r.minors_checked, 5);
        let mut full = [m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)];
        assert!((determinant(&mut full, 2) - (x1 - x0).sin()).abs() < 1e-15);

        let m = CollocationMatrix::from_rows(vec![vec![1.0, 2.0], vec![3.0, 1.0]], vec![0.0, 1.0]).unwrap();
        let r = total_positivity_check(&m, 1e-9).unwrap();
        assert!(!r.is_tp);
        assert_eq!(r.worst_minor, -5.0);
        assert_eq!(
            r.witness,
            Some(MinorIndex {
                rows: vec![0, 1],
                cols: vec![0, 1]
            })
        );
    }

    #[test]
    fn tp_refuses_oversized() {
        assert_eq!(minor_count(2, 2), 5);
        let rows = vec![vec![1.0; 14]; 14];
        let pts: Vec<f64> = (0..14).map(|j| j as f64).collect();
        let m = CollocationMatrix::from_rows(rows, pts).unwrap();
        assert!(minor_count(14, 14) > MINOR_CAP);
        assert!(matches!(
            total_positivity_check(&m, 1e-9),
            Err(Error::SizeCapExceeded { .. })
        ));
    }

    #[test]
    fn row_and_column_scaling_preserve_tp() {
        let pts: Vec<f64> = (1..=6).map(|j| j as f64 * FRAC_PI_2 / 7.0).collect();
        let m = collocation(&BasisFamily::Quantum, 3, q(1.5), &quarter(), &pts).unwrap();
        assert!(total_positivity_check(&m, 1e-9).unwrap().is_tp);
        let g = m.scale_by_function(|x| 0.5 + x * x);
        assert!(total_positivity_check(&g, 1e-9).unwrap().is_tp);
        let d = m.scale_rows(&[2.0, 0.1, 7.0, 1.0]).unwrap();
        assert!(total_positivity_check(&d, 1e-9).unwrap().is_tp);
        assert!(m.scale_rows(&[1.0]).is_err());
    }

    #[test]
    fn sign_change_examples() {
        assert_eq!(sign_changes_seq(&SignSequence::new(vec![1.0, -1.0, 2.0])), 2);
        assert_eq!(sign_changes_seq(&SignSequence::new(vec![1.0, 0.0, -1.0])), 1);
        assert_eq!(sign_changes_seq(&SignSequence::new(vec![])), 0);
        for n in 0..=10 {
            let alt: Vec<f64> = (0..=n).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
            assert_eq!(sign_changes_seq(&SignSequence::new(alt)), n);
        }
        let s = SignSequence::with_tolerance(vec![1.0, -0.01, 1.0], 0.1).unwrap();
        assert_eq!(sign_changes_seq(&s), 0);
        assert!(SignSequence::with_tolerance(vec![], -1.0).is_err());
    }

    #[test]
    fn function_sign_changes() {
        let positive: Vec<f64> = (0..100).map(|i| 1.0 + (i as f64).sin().powi(2)).collect();
        assert_eq!(sign_changes_function(&positive), 0);
        let grid = Interval::new(0.0, 2.0 * std::f64::consts::PI)
            .unwrap()
            .uniform_grid(512);
        let sin2: Vec<f64> = grid.iter().map(|x| (2.0 * x).sin()).collect();
        assert_eq!(sign_changes_function(&sin2), 3);

        let curve = crate::curve::QTrigCurve::new(
            crate::curve::ControlPolygon::from_scalars(&[0.5, 1.0, 2.0, 4.0]).unwrap(),
            q(2.0),
            quarter(),
        )
        .unwrap();
        let vals: Vec<f64> = quarter()
            .uniform_grid(256)
            .into_iter()
            .map(|x| curve.evaluate_direct(x)[0])
            .collect();
        assert_eq!(sign_changes_function(&vals), 0);
    }

    #[test]
    fn monomial_reference() {
        let r = monomial_tp_reference(1, &[0.0, 1.0]).unwrap();
        assert!(r.is_tp);
        assert_eq!(r.minors_checked, 5);
        assert!(monomial_tp_reference(2, &[0.5, 1.0, 2.0]).unwrap().is_tp);
        assert!(monomial_tp_reference(3, &[0.0, 0.3, 0.7, 1.2]).unwrap().is_tp);
        assert!(monomial_tp_reference(5, &[0.0, 1.0]).is_err());
        assert!(monomial_tp_reference(2, &[-1.0, 1.0]).is_err());
        assert!(monomial_tp_reference(2, &[0.0; 7]).is_err());
    }

    #[test]
    fn classical_family_is_tp() {
        let pts = [0.1, FRAC_PI_4, 1.4];
        let m = collocation(&BasisFamily::Classical, 3, q(9.0), &quarter(), &pts).unwrap();
        assert!(total_positivity_check(&m, 1e-9).unwrap().is_tp);
    }
}
