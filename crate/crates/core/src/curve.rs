//! Quantum trigonometric Bezier curves and their de Casteljau-type
//! evaluation schemes.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::basis::QTrigBasis;
use crate::error::{Error, Result};
use crate::kernel::{d_kernel, Interval};
use crate::qcalculus::{q_binomial_table, QParam};

/// Largest condition number accepted for the trigonometric least-squares fit.
pub const MAX_FIT_CONDITION: f64 = 1e12;

/// Ordered control points in `R^d`.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlPolygon {
    points: Vec<Vec<f64>>,
    dim: usize,
}

impl ControlPolygon {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self> {
        let dim = points.first().ok_or(Error::EmptyPolygon)?.len();
        if dim == 0 {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        Ok(Self { points, dim })
    }

    /// One-dimensional polygon from scalar control values.
    pub fn from_scalars(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| vec![v]).collect())
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn first(&self) -> &[f64] {
        &self.points[0]
    }

    pub fn last(&self) -> &[f64] {
        &self.points[self.points.len() - 1]
    }

    /// Largest pairwise Euclidean distance between control points.
    pub fn diameter(&self) -> f64 {
        let mut best = 0.0f64;
        for (i, p) in self.points.iter().enumerate() {
            for r in &self.points[i + 1..] {
                best = best.max(distance(p, r));
            }
        }
        best
    }

    /// Applies `f` to every control point.
    pub fn map_points(&self, f: impl Fn(&[f64]) -> Vec<f64>) -> Result<Self> {
        Self::new(self.points.iter().map(|p| f(p)).collect())
    }
}

pub(crate) fn distance(p: &[f64], r: &[f64]) -> f64 {
    p.iter().zip(r).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt()
}

/// Weighted sum of points; all points share `dim`.
pub(crate) fn combine(points: &[Vec<f64>], coeffs: &[f64], dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for (p, &c) in points.iter().zip(coeffs) {
        for (o, v) in out.iter_mut().zip(p) {
            *o += c * v;
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Left coefficient carries `q^k`.
    First,
    /// Right coefficient carries `q^(n-r-k-1)`.
    Second,
}

/// How a curve is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EvalMethod {
    Direct,
    Alg1,
    Alg2,
}

impl std::str::FromStr for EvalMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Self::Direct),
            "alg1" => Ok(Self::Alg1),
            "alg2" => Ok(Self::Alg2),
            other => Err(Error::InvalidArgument(format!(
                "unknown method '{other}' (expected direct, alg1 or alg2)"
            ))),
        }
    }
}

/// Where a sample came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleSource {
    Eval(EvalMethod),
    Rational,
    /// Values supplied by the caller, e.g. a reference function.
    External,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSample {
    pub x: f64,
    pub point: Vec<f64>,
    pub source: SampleSource,
}

impl CurveSample {
    pub fn external(x: f64, point: Vec<f64>) -> Self {
        Self {
            x,
            point,
            source: SampleSource::External,
        }
    }
}

/// Full triangular scheme; row `r` holds `n - r + 1` points.
#[derive(Debug, Clone, PartialEq)]
pub struct DeCasteljauTableau {
    pub variant: Algorithm,
    pub rows: Vec<Vec<Vec<f64>>>,
    pub x: f64,
    pub q: QParam,
    pub interval: Interval,
}

impl DeCasteljauTableau {
    /// The single point of the last row, equal to the curve value.
    pub fn apex(&self) -> &[f64] {
        &self.rows[self.rows.len() - 1][0]
    }

    pub fn entry(&self, r: usize, k: usize) -> Option<&[f64]> {
        self.rows.get(r)?.get(k).map(Vec::as_slice)
    }
}

/// A control polygon bound to a certified basis.
#[derive(Debug, Clone)]
pub struct QTrigCurve {
    polygon: ControlPolygon,
    basis: QTrigBasis,
}

impl QTrigCurve {
    pub fn new(polygon: ControlPolygon, q: QParam, interval: Interval) -> Result<Self> {
        let basis = QTrigBasis::new(polygon.degree(), q, interval)?;
        Ok(Self { polygon, basis })
    }

    pub fn polygon(&self) -> &ControlPolygon {
        &self.polygon
    }

    pub fn basis(&self) -> &QTrigBasis {
        &self.basis
    }

    pub fn interval(&self) -> &Interval {
        self.basis.interval()
    }

    pub fn q(&self) -> QParam {
        self.basis.q()
    }

    /// `P(x) = sum_k b_k B^n_k(x; q)`.
    pub fn evaluate_direct(&self, x: f64) -> Vec<f64> {
        let basis = self.basis.values_direct(x);
        combine(self.polygon.points(), &basis.values, self.polygon.dim())
    }

    pub fn tableau(&self, x: f64, variant: Algorithm) -> DeCasteljauTableau {
        let n = self.polygon.degree();
        let q = self.q();
        let (a, b) = (self.interval().a(), self.interval().b());
        let mut rows = Vec::with_capacity(n + 1);
        rows.push(self.polygon.points().to_vec());
        for r in 0..n {
            let prev: &Vec<Vec<f64>> = &rows[r];
            let den = d_kernel(a, b, q.pow((n - r - 1) as i64));
            let next = (0..n - r)
                .map(|k| {
                    let tail = (n - r - k - 1) as i64;
                    let mut left = d_kernel(x, b, q.pow(tail)) / den;
                    let mut right = d_kernel(a, x, q.pow(k as i64)) / den;
                    match variant {
                        Algorithm::First => left *= q.pow(k as i64),
                        Algorithm::Second => right *= q.pow(tail),
                    }
                    prev[k]
                        .iter()
                        .zip(&prev[k + 1])
                        .map(|(p, s)| left * p + right * s)
                        .collect()
                })
                .collect();
            rows.push(next);
        }
        DeCasteljauTableau {
            variant,
            rows,
            x,
            q,
            interval: *self.interval(),
        }
    }

    pub fn evaluate(&self, x: f64, method: EvalMethod) -> Vec<f64> {
        match method {
            EvalMethod::Direct => self.evaluate_direct(x),
            EvalMethod::Alg1 => self.tableau(x, Algorithm::First).apex().to_vec(),
            EvalMethod::Alg2 => self.tableau(x, Algorithm::Second).apex().to_vec(),
        }
    }

    /// Closed form of tableau entry `(r, k)`.
    pub fn intermediate_explicit(&self, variant: Algorithm, r: usize, k: usize, x: f64) -> Result<Vec<f64>> {
        let n = self.polygon.degree();
        if r > n {
            return Err(Error::IndexOutOfRange { index: r, degree: n });
        }
        if k > n - r {
            return Err(Error::IndexOutOfRange {
                index: k,
                degree: n - r,
            });
        }
        let q = self.q();
        let (a, b) = (self.interval().a(), self.interval().b());
        let binom = q_binomial_table(r, q);
        let den: f64 = (0..r).map(|i| d_kernel(a, b, q.pow((i + n - r) as i64))).product();
        let coeffs: Vec<f64> = (0..=r)
            .map(|j| {
                let factor = match variant {
                    Algorithm::First => q.pow((k * (r - j)) as i64),
                    Algorithm::Second => q.pow((j * (n - r - k)) as i64),
                };
                let left: f64 = (0..j).map(|i| d_kernel(a, x, q.pow((i + k) as i64))).product();
                let right: f64 = (0..r - j)
                    .map(|i| d_kernel(x, b, q.pow((i + n - r - k) as i64)))
                    .product();
                factor * binom.get(r, j) * left * right / den
            })
            .collect();
        Ok(combine(&self.polygon.points()[k..=k + r], &coeffs, self.polygon.dim()))
    }

    /// `count` samples at uniform parameter spacing, endpoints included.
    pub fn sample(&self, count: usize, method: EvalMethod) -> Result<Vec<CurveSample>> {
        if count < 2 {
            return Err(Error::TooFewSamples { min: 2, got: count });
        }
        Ok(self
            .interval()
            .uniform_grid(count)
            .into_iter()
            .map(|x| CurveSample {
                x,
                point: self.evaluate(x, method),
                source: SampleSource::Eval(method),
            })
            .collect())
    }
}

pub fn evaluate_direct(polygon: &ControlPolygon, x: f64, q: QParam, interval: &Interval) -> Result<Vec<f64>> {
    Ok(QTrigCurve::new(polygon.clone(), q, *interval)?.evaluate_direct(x))
}

pub fn evaluate_alg1(polygon: &ControlPolygon, x: f64, q: QParam, interval: &Interval) -> Result<DeCasteljauTableau> {
    Ok(QTrigCurve::new(polygon.clone(), q, *interval)?.tableau(x, Algorithm::First))
}

pub fn evaluate_alg2(polygon: &ControlPolygon, x: f64, q: QParam, interval: &Interval) -> Result<DeCasteljauTableau> {
    Ok(QTrigCurve::new(polygon.clone(), q, *interval)?.tableau(x, Algorithm::Second))
}

pub fn intermediate_explicit(
    variant: Algorithm,
    r: usize,
    k: usize,
    x: f64,
    polygon: &ControlPolygon,
    q: QParam,
    interval: &Interval,
) -> Result<Vec<f64>> {
    QTrigCurve::new(polygon.clone(), q, *interval)?.intermediate_explicit(variant, r, k, x)
}

pub fn sample_curve(
    polygon: &ControlPolygon,
    q: QParam,
    interval: &Interval,
    count: usize,
    method: EvalMethod,
) -> Result<Vec<CurveSample>> {
    QTrigCurve::new(polygon.clone(), q, *interval)?.sample(count, method)
}

/// Fourier modes spanning `T_n`: `1, cos 2x, sin 2x, ..., cos nx, sin nx`
/// for even `n`; `cos x, sin x, cos 3x, sin 3x, ..., cos nx, sin nx` for odd.
pub fn tn_span_functions(n: usize, x: f64) -> Vec<f64> {
    let mut row = Vec::with_capacity(n + 1);
    if n.is_multiple_of(2) {
        row.push(1.0);
    }
    let mut m = if n.is_multiple_of(2) { 2 } else { 1 };
    while m <= n {
        let t = m as f64 * x;
        row.push(t.cos());
        row.push(t.sin());
        m += 2;
    }
    row
}

/// Least-squares residual of fitting the samples in `T_n`.
///
/// The fit is solved per coordinate by the normal equations; the returned
/// value is the largest per-coordinate root-mean-square residual.
pub fn tn_membership_residual(samples: &[CurveSample], n: usize) -> Result<f64> {
    let needed = 2 * (n + 1);
    if samples.len() < needed {
        return Err(Error::TooFewSamples {
            min: needed,
            got: samples.len(),
        });
    }
    let dim = samples[0].point.len();
    if let Some(s) = samples.iter().find(|s| s.point.len() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: s.point.len(),
        });
    }
    let cols = n + 1;
    let design = DMatrix::from_fn(samples.len(), cols, |i, j| tn_span_functions(n, samples[i].x)[j]);
    let gram = design.transpose() * &design;

    let eigen = SymmetricEigen::new(gram.clone());
    let max_ev = eigen.eigenvalues.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let min_ev = eigen.eigenvalues.iter().fold(f64::INFINITY, |m, v| m.min(v.abs()));
    let condition = if min_ev > 0.0 { max_ev / min_ev } else { f64::INFINITY };
    if !(condition <= MAX_FIT_CONDITION) {
        return Err(Error::IllConditioned { condition });
    }
    let chol = gram.cholesky().ok_or(Error::IllConditioned { condition })?;

    let mut worst = 0.0f64;
    for c in 0..dim {
        let rhs = DVector::from_iterator(samples.len(), samples.iter().map(|s| s.point[c]));
        let coef = chol.solve(&(design.transpose() * &rhs));
        let resid = &design * coef - rhs;
        worst = worst.max((resid.norm_squared() / samples.len() as f64).sqrt());
    }
    Ok(worst)
}
