//! The trigonometric kernel `d(x, y; q)`, parameter intervals and their
//! non-singularity certificates.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::qcalculus::QParam;

/// Below this magnitude a kernel denominator is treated as zero.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// Absolute tolerance when matching interval endpoints to the `k*pi/2` grid.
pub const QUARTER_PERIOD_TOLERANCE: f64 = 1e-12;

/// `d(x, y; q) = (q+1)/2 sin(y - x) + (q-1)/2 sin(y + x)`.
#[inline]
pub fn d_kernel(x: f64, y: f64, q: f64) -> f64 {
    0.5 * (q + 1.0) * (y - x).sin() + 0.5 * (q - 1.0) * (y + x).sin()
}

/// A parameter domain `[a, b]` in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
    quarter_index: Option<i64>,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::MalformedInterval { a, b });
        }
        Ok(Self {
            a,
            b,
            quarter_index: quarter_period_index(a, b),
        })
    }

    /// `[k*pi/2, (k+1)*pi/2]`.
    pub fn quarter_period(k: i64) -> Self {
        let a = k as f64 * FRAC_PI_2;
        let b = (k + 1) as f64 * FRAC_PI_2;
        Self {
            a,
            b,
            quarter_index: Some(k),
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn len(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_quarter_period(&self) -> bool {
        self.quarter_index.is_some()
    }

    /// `k` such that the interval is `[k*pi/2, (k+1)*pi/2]`, if any.
    pub fn quarter_index(&self) -> Option<i64> {
        self.quarter_index
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// `count` uniformly spaced parameters covering both endpoints exactly.
    pub fn uniform_grid(&self, count: usize) -> Vec<f64> {
        match count {
            0 => Vec::new(),
            1 => vec![self.a],
            _ => {
                let last = count - 1;
                (0..count)
                    .map(|i| {
                        if i == last {
                            self.b
                        } else {
                            self.a + self.len() * (i as f64 / last as f64)
                        }
                    })
                    .collect()
            }
        }
    }
}

fn quarter_period_index(a: f64, b: f64) -> Option<i64> {
    let k = (a / FRAC_PI_2).round();
    let on_grid = |v: f64, j: f64| (v - j * FRAC_PI_2).abs() <= QUARTER_PERIOD_TOLERANCE;
    (on_grid(a, k) && on_grid(b, k + 1.0)).then_some(k as i64)
}

/// Result of checking `|d(a, b; q^i)| > threshold` for `i = 0..=n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidityCertificate {
    pub n: usize,
    pub min_abs_denominator: f64,
    pub valid: bool,
    pub failing_index: Option<usize>,
}

impl ValidityCertificate {
    pub fn into_result(self) -> Result<Self> {
        match self.failing_index {
            None => Ok(self),
            Some(index) => Err(Error::SingularInterval {
                index,
                value: self.min_abs_denominator,
            }),
        }
    }
}

/// Certifies the basis denominators of degree `n` on `interval`.
///
/// Covers indices `0..n` of the product-formula denominator plus index `n`.
pub fn certify_interval(interval: &Interval, q: QParam, n: usize) -> ValidityCertificate {
    let mut min_abs = f64::INFINITY;
    let mut failing_index = None;
    for i in 0..=n {
        let value = d_kernel(interval.a, interval.b, q.pow(i as i64)).abs();
        if failing_index.is_none() && !(value > SINGULARITY_THRESHOLD) {
            failing_index = Some(i);
        }
        min_abs = min_abs.min(value);
    }
    ValidityCertificate {
        n,
        min_abs_denominator: min_abs,
        valid: failing_index.is_none(),
        failing_index,
    }
}

/// Circular barycentric coordinates `(u, v)` of `x` relative to the arc `[a, b]`.
///
/// `u = sin(x - a)/sin(b - a)` and `v = sin(b - x)/sin(b - a)`. Arcs of
/// length `pi` or more are rejected.
pub fn circular_barycentric(interval: &Interval, x: f64) -> Result<(f64, f64)> {
    let (a, b) = (interval.a, interval.b);
    let den = d_kernel(a, b, 1.0);
    if interval.len() >= std::f64::consts::PI || den.abs() <= SINGULARITY_THRESHOLD {
        return Err(Error::SingularInterval {
            index: 0,
            value: den.abs(),
        });
    }
    Ok((d_kernel(a, x, 1.0) / den, d_kernel(x, b, 1.0) / den))
}
