//! Quantum trigonometric Bernstein basis functions `B^n_k(x; q)`.
//!
//! Three evaluation routes are provided and are expected to agree:
//! the product formula, and two Pascal-type recurrences that build the
//! triangle of lower-degree bases row by row.

use crate::error::{Error, Result};
use crate::kernel::{certify_interval, d_kernel, Interval, SINGULARITY_THRESHOLD};
use crate::qcalculus::{q_binomial_table, QParam};

/// Which Pascal-type recurrence drives the triangular evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Recurrence {
    /// `q^(n-k)` multiplies the `B^(n-1)_(k-1)` term.
    First,
    /// `q^k` multiplies the `B^(n-1)_k` term.
    Second,
}

/// The `n + 1` basis values at one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisVector {
    pub degree: usize,
    pub q: QParam,
    pub interval: Interval,
    pub x: f64,
    pub values: Vec<f64>,
}

impl BasisVector {
    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }
}

/// A certified degree-`n` basis on a fixed interval and `q`.
///
/// Construction checks the denominators once; evaluation is then infallible.
#[derive(Debug, Clone)]
pub struct QTrigBasis {
    degree: usize,
    q: QParam,
    interval: Interval,
    binomials: Vec<f64>,
    /// `d(a, b; q^i)` for `i = 0..=n`.
    denominators: Vec<f64>,
    normalizer: f64,
}

impl QTrigBasis {
    pub fn new(degree: usize, q: QParam, interval: Interval) -> Result<Self> {
        certify_interval(&interval, q, degree).into_result()?;
        let binomials = q_binomial_table(degree, q).row(degree).to_vec();
        let denominators: Vec<f64> = (0..=degree)
            .map(|i| d_kernel(interval.a(), interval.b(), q.pow(i as i64)))
            .collect();
        let normalizer = denominators[..degree].iter().product();
        Ok(Self {
            degree,
            q,
            interval,
            binomials,
            denominators,
            normalizer,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    /// True when the basis is known to be totally positive (and thus
    /// non-negative) on its interval.
    pub fn is_shape_preserving(&self) -> bool {
        self.q.is_positive() && self.interval.is_quarter_period()
    }

    #[inline]
    fn left(&self, x: f64, i: i64) -> f64 {
        d_kernel(self.interval.a(), x, self.q.pow(i))
    }

    #[inline]
    fn right(&self, x: f64, i: i64) -> f64 {
        d_kernel(x, self.interval.b(), self.q.pow(i))
    }

    /// `B^n_k(x; q)` by the product formula.
    pub fn value(&self, k: usize, x: f64) -> Result<f64> {
        if k > self.degree {
            return Err(Error::IndexOutOfRange {
                index: k,
                degree: self.degree,
            });
        }
        Ok(self.value_unchecked(k, x))
    }

    fn value_unchecked(&self, k: usize, x: f64) -> f64 {
        let n = self.degree;
        let left: f64 = (0..k as i64).map(|i| self.left(x, i)).product();
        let right: f64 = (0..(n - k) as i64).map(|i| self.right(x, i)).product();
        self.binomials[k] * left * right / self.normalizer
    }

    /// All basis values by the product formula.
    pub fn values_direct(&self, x: f64) -> BasisVector {
        let values = (0..=self.degree).map(|k| self.value_unchecked(k, x)).collect();
        self.wrap(x, values)
    }

    /// All basis values by the chosen recurrence, keeping one row in memory.
    pub fn values_recurrence(&self, x: f64, recurrence: Recurrence) -> BasisVector {
        let mut row = vec![0.0; self.degree + 1];
        row[0] = 1.0;
        for m in 1..=self.degree {
            self.advance_row(&mut row, m, x, recurrence);
        }
        self.wrap(x, row)
    }

    /// Every row `B^m_*` for `m = 0..=n`, for inspection.
    pub fn tableau(&self, x: f64, recurrence: Recurrence) -> Vec<Vec<f64>> {
        let mut row = vec![0.0; self.degree + 1];
        row[0] = 1.0;
        let mut rows = vec![vec![1.0]];
        for m in 1..=self.degree {
            self.advance_row(&mut row, m, x, recurrence);
            rows.push(row[..=m].to_vec());
        }
        rows
    }

    /// Overwrites `row[0..=m-1]` (degree `m - 1`) with degree `m` in place.
    fn advance_row(&self, row: &mut [f64], m: usize, x: f64, recurrence: Recurrence) {
        let den = self.denominators[m - 1];
        let m_i = m as i64;
        for k in (0..=m).rev() {
            let k_i = k as i64;
            // Out-of-range neighbours are zero; skip them so no negative
            // powers of q enter the kernel.
            let lower = if k > 0 {
                row[k - 1] * self.left(x, k_i - 1) / den
            } else {
                0.0
            };
            let same = if k < m {
                row[k] * self.right(x, m_i - k_i - 1) / den
            } else {
                0.0
            };
            row[k] = match recurrence {
                Recurrence::First => self.q.pow(m_i - k_i) * lower + same,
                Recurrence::Second => lower + self.q.pow(k_i) * same,
            };
        }
    }

    fn wrap(&self, x: f64, values: Vec<f64>) -> BasisVector {
        BasisVector {
            degree: self.degree,
            q: self.q,
            interval: self.interval,
            x,
            values,
        }
    }
}

/// `B^n_k(x; q)` by the product formula.
pub fn basis_value_direct(n: usize, k: usize, x: f64, q: QParam, interval: &Interval) -> Result<f64> {
    QTrigBasis::new(n, q, *interval)?.value(k, x)
}

pub fn basis_all_recurrence1(n: usize, x: f64, q: QParam, interval: &Interval) -> Result<BasisVector> {
    Ok(QTrigBasis::new(n, q, *interval)?.values_recurrence(x, Recurrence::First))
}

pub fn basis_all_recurrence2(n: usize, x: f64, q: QParam, interval: &Interval) -> Result<BasisVector> {
    Ok(QTrigBasis::new(n, q, *interval)?.values_recurrence(x, Recurrence::Second))
}

/// Classical circular Bernstein basis
/// `C(n,k) (sin(x-a)/sin(b-a))^k (sin(b-x)/sin(b-a))^(n-k)`.
pub fn classical_trig_basis(n: usize, k: usize, x: f64, interval: &Interval) -> Result<f64> {
    if k > n {
        return Err(Error::IndexOutOfRange { index: k, degree: n });
    }
    let (a, b) = (interval.a(), interval.b());
    let den = (b - a).sin();
    if den.abs() <= SINGULARITY_THRESHOLD {
        return Err(Error::SingularInterval {
            index: 0,
            value: den.abs(),
        });
    }
    let binom = (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64);
    let u = (x - a).sin() / den;
    let v = (b - x).sin() / den;
    Ok(binom * u.powi(k as i32) * v.powi((n - k) as i32))
}
