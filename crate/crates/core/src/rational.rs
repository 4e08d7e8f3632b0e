//! Rational quantum trigonometric bases and curves.

use crate::basis::{BasisVector, QTrigBasis};
use crate::curve::{combine, ControlPolygon, CurveSample, SampleSource};
use crate::error::{Error, Result};
use crate::kernel::Interval;
use crate::qcalculus::QParam;

/// Relative threshold on `|sum_i w_i B_i|` against `max_i |w_i B_i|`.
pub const DENOMINATOR_THRESHOLD: f64 = 1e-12;

/// Points in the grid used to certify the denominator over `[a, b]`.
pub const DENOMINATOR_GRID: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
    all_positive: bool,
}

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::LengthMismatch { expected: 1, found: 0 });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidArgument(format!("weight {w} is not finite")));
        }
        let all_positive = weights.iter().all(|&w| w > 0.0);
        Ok(Self { weights, all_positive })
    }

    /// `n + 1` unit weights.
    pub fn uniform(n: usize) -> Self {
        Self {
            weights: vec![1.0; n + 1],
            all_positive: true,
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn all_positive(&self) -> bool {
        self.all_positive
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.weights.iter().map(|w| w * factor).collect())
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if self.weights.len() != n + 1 {
            return Err(Error::LengthMismatch {
                expected: n + 1,
                found: self.weights.len(),
            });
        }
        Ok(())
    }
}

/// A weighted basis `R^n_k = w_k B^n_k / sum_i w_i B^n_i`.
#[derive(Debug, Clone)]
pub struct RationalBasis {
    basis: QTrigBasis,
    weights: WeightVector,
}

impl RationalBasis {
    pub fn new(n: usize, q: QParam, interval: Interval, weights: WeightVector) -> Result<Self> {
        weights.check_degree(n)?;
        Ok(Self {
            basis: QTrigBasis::new(n, q, interval)?,
            weights,
        })
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn basis(&self) -> &QTrigBasis {
        &self.basis
    }

    /// True when non-negativity, convex hull and variation diminishing
    /// properties are guaranteed: `q > 0`, all weights positive and a
    /// quarter-period interval.
    pub fn shape_guarantee(&self) -> bool {
        self.weights.all_positive() && self.basis.is_shape_preserving()
    }

    /// `(sum_i w_i B_i(x), max_i |w_i B_i(x)|)` and the weighted terms.
    fn weighted(&self, x: f64) -> (Vec<f64>, f64, f64) {
        let terms: Vec<f64> = self
            .basis
            .values_direct(x)
            .values
            .iter()
            .zip(self.weights.as_slice())
            .map(|(b, w)| b * w)
            .collect();
        let sum = terms.iter().sum();
        let scale = terms.iter().fold(0.0f64, |m, t| m.max(t.abs()));
        (terms, sum, scale)
    }

    pub fn denominator(&self, x: f64) -> f64 {
        self.weighted(x).1
    }

    pub fn values(&self, x: f64) -> Result<BasisVector> {
        let (terms, sum, scale) = self.weighted(x);
        if !(sum.abs() > DENOMINATOR_THRESHOLD * scale) {
            return Err(Error::SingularDenominator { x, value: sum });
        }
        let b = self.basis.values_direct(x);
        Ok(BasisVector {
            values: terms.into_iter().map(|t| t / sum).collect(),
            ..b
        })
    }

    /// Checks the denominator on a uniform grid over the interval.
    ///
    /// A sign change between neighbouring grid points is bisected to locate
    /// the zero, which is reported as the offending parameter.
    pub fn certify(&self) -> Result<()> {
        let grid = self.basis.interval().uniform_grid(DENOMINATOR_GRID);
        let mut prev: Option<(f64, f64)> = None;
        for x in grid {
            let (_, sum, scale) = self.weighted(x);
            if !(sum.abs() > DENOMINATOR_THRESHOLD * scale) {
                return Err(Error::SingularDenominator { x, value: sum });
            }
            if let Some((px, psum)) = prev {
                if psum.signum() != sum.signum() {
                    let root = self.bisect(px, x, psum);
                    return Err(Error::SingularDenominator {
                        x: root,
                        value: self.denominator(root),
                    });
                }
            }
            prev = Some((x, sum));
        }
        Ok(())
    }

    fn bisect(&self, mut lo: f64, mut hi: f64, lo_value: f64) -> f64 {
        let lo_sign = lo_value.signum();
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if self.denominator(mid).signum() == lo_sign {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }
}

/// A rational curve with certified denominator.
#[derive(Debug, Clone)]
pub struct RationalCurve {
    polygon: ControlPolygon,
    basis: RationalBasis,
}

impl RationalCurve {
    pub fn new(polygon: ControlPolygon, weights: WeightVector, q: QParam, interval: Interval) -> Result<Self> {
        let basis = RationalBasis::new(polygon.degree(), q, interval, weights)?;
        basis.certify()?;
        Ok(Self { polygon, basis })
    }

    pub fn polygon(&self) -> &ControlPolygon {
        &self.polygon
    }

    pub fn basis(&self) -> &RationalBasis {
        &self.basis
    }

    pub fn shape_guarantee(&self) -> bool {
        self.basis.shape_guarantee()
    }

    pub fn evaluate(&self, x: f64) -> Result<Vec<f64>> {
        let r = self.basis.values(x)?;
        Ok(combine(self.polygon.points(), &r.values, self.polygon.dim()))
    }

    pub fn sample(&self, count: usize) -> Result<Vec<CurveSample>> {
        if count < 2 {
            return Err(Error::TooFewSamples { min: 2, got: count });
        }
        self.basis
            .basis()
            .interval()
            .uniform_grid(count)
            .into_iter()
            .map(|x| {
                Ok(CurveSample {
                    x,
                    point: self.evaluate(x)?,
                    source: SampleSource::Rational,
                })
            })
            .collect()
    }
}

pub fn rational_basis_all(
    n: usize,
    x: f64,
    q: QParam,
    interval: &Interval,
    weights: &WeightVector,
) -> Result<BasisVector> {
    RationalBasis::new(n, q, *interval, weights.clone())?.values(x)
}

pub fn rational_evaluate(
    polygon: &ControlPolygon,
    weights: &WeightVector,
    x: f64,
    q: QParam,
    interval: &Interval,
) -> Result<Vec<f64>> {
    let basis = RationalBasis::new(polygon.degree(), q, *interval, weights.clone())?;
    let r = basis.values(x)?;
    Ok(combine(polygon.points(), &r.values, polygon.dim()))
}

pub fn rational_sample(
    polygon: &ControlPolygon,
    weights: &WeightVector,
    q: QParam,
    interval: &Interval,
    count: usize,
) -> Result<Vec<CurveSample>> {
    RationalCurve::new(polygon.clone(), weights.clone(), q, *interval)?.sample(count)
}

/// Largest distance from any sample to the segment `[first, last]` (2D).
pub fn chord_distance_profile(samples: &[CurveSample], first: &[f64], last: &[f64]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::TooFewSamples { min: 1, got: 0 });
    }
    for p in [first, last]
        .into_iter()
        .chain(samples.iter().map(|s| s.point.as_slice()))
    {
        if p.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: p.len(),
            });
        }
    }
    Ok(samples
        .iter()
        .map(|s| point_segment_distance(&s.point, first, last))
        .fold(0.0, f64::max))
}

pub(crate) fn point_segment_distance(p: &[f64], s0: &[f64], s1: &[f64]) -> f64 {
    let (dx, dy) = (s1[0] - s0[0], s1[1] - s0[1]);
    let len2 = dx * dx + dy * dy;
    let t = if len2 > 0.0 {
        (((p[0] - s0[0]) * dx + (p[1] - s0[1]) * dy) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    let (cx, cy) = (s0[0] + t * dx, s0[1] + t * dy);
    ((p[0] - cx).powi(2) + (p[1] - cy).powi(2)).sqrt()
}
