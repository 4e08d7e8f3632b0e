//! q-integers, q-factorials and Gaussian binomial coefficients.
//!
//! Binomials are built with the Pascal-type recurrence
//! `[n, k] = [n-1, k] + q^(n-k) [n-1, k-1]`, which stays continuous through
//! `q = 1` where the factorial quotient has a removable singularity.

use crate::error::{Error, Result};

/// The shape parameter `q`.
///
/// Any finite nonzero value can be used for evaluation; shape guarantees
/// (non-negativity, total positivity) additionally require `q > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if q.is_finite() && q != 0.0 {
            Ok(Self(q))
        } else {
            Err(Error::InvalidQ(q))
        }
    }

    /// `q = 1`, the classical circular Bernstein case.
    pub const ONE: QParam = QParam(1.0);

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    /// True when the shape-preservation hypothesis `q > 0` holds.
    pub fn is_positive(self) -> bool {
        self.0 > 0.0
    }

    /// `q^k` for a (possibly negative) integer exponent.
    #[inline]
    pub fn pow(self, k: i64) -> f64 {
        self.0.powi(k as i32)
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        Self::new(q)
    }
}

impl std::fmt::Display for QParam {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `[k]_q = 1 + q + ... + q^(k-1)`.
///
/// Summed directly rather than through `(1 - q^k)/(1 - q)` so the value is
/// continuous at `q = 1`.
pub fn q_integer(k: usize, q: QParam) -> f64 {
    let q = q.value();
    (0..k).fold(0.0, |acc, _| acc * q + 1.0)
}

/// `[k]_q! = [k]_q [k-1]_q ... [1]_q`, with `[0]_q! = 1`.
pub fn q_factorial(k: usize, q: QParam) -> f64 {
    (1..=k).map(|j| q_integer(j, q)).product()
}

/// Gaussian binomial `[n, k]_q`; zero when `k < 0` or `k > n`.
pub fn q_binomial(n: usize, k: i64, q: QParam) -> f64 {
    if k < 0 || k as usize > n {
        return 0.0;
    }
    pascal_row(n, q)[k as usize]
}

/// Row `n` of the q-Pascal triangle, built in place.
fn pascal_row(n: usize, q: QParam) -> Vec<f64> {
    let mut row = vec![0.0; n + 1];
    row[0] = 1.0;
    for m in 1..=n {
        // Walk right to left so row[k - 1] still holds the previous row.
        for k in (1..=m).rev() {
            row[k] += q.pow((m - k) as i64) * row[k - 1];
        }
    }
    row
}

/// All Gaussian binomials `[m, k]_q` for `0 <= k <= m <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct QBinomialTable {
    n: usize,
    q: QParam,
    rows: Vec<Vec<f64>>,
}

impl QBinomialTable {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> QParam {
        self.q
    }

    /// Entry `[m, k]_q`, zero outside the triangle.
    pub fn get(&self, m: usize, k: usize) -> f64 {
        self.rows.get(m).and_then(|row| row.get(k)).copied().unwrap_or(0.0)
    }

    pub fn row(&self, m: usize) -> &[f64] {
        &self.rows[m]
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

pub fn q_binomial_table(n: usize, q: QParam) -> QBinomialTable {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    rows.push(vec![1.0]);
    for m in 1..=n {
        let prev = &rows[m - 1];
        let row = (0..=m)
            .map(|k| {
                let upper = if k < m { prev[k] } else { 0.0 };
                let diag = if k > 0 {
                    q.pow((m - k) as i64) * prev[k - 1]
                } else {
                    0.0
                };
                upper + diag
            })
            .collect();
        rows.push(row);
    }
    QBinomialTable { n, q, rows }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: f64) -> QParam {
        QParam::new(v).unwrap()
    }

    /// Exact Gaussian binomial for integer q via the factorial quotient.
    fn exact_q_binomial(n: u32, k: u32, q: u128) -> u128 {
        let int = |j: u32| (0..j).map(|e| q.pow(e)).sum::<u128>();
        let fact = |j: u32| (1..=j).map(int).product::<u128>();
        fact(n) / (fact(k) * fact(n - k))
    }

    fn classical_binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn rejects_zero_and_non_finite_q() {
        assert!(QParam::new(0.0).is_err());
        assert!(QParam::new(f64::NAN).is_err());
        assert!(QParam::new(f64::INFINITY).is_err());
        assert!(QParam::new(-0.5).is_ok());
    }

    #[test]
    fn q_integer_examples() {
        assert_eq!(q_integer(0, q(2.5)), 0.0);
        assert_eq!(q_integer(4, q(1.0)), 4.0);
        assert_eq!(q_integer(3, q(2.0)), 7.0);
        assert_eq!(q_integer(3, q(2.0)) as u128, exact_q_binomial(3, 1, 2));
    }

    #[test]
    fn q_factorial_examples() {
        assert_eq!(q_factorial(0, q(7.0)), 1.0);
        assert_eq!(q_factorial(3, q(1.0)), 6.0);
        assert_eq!(q_factorial(3, q(2.0)), 21.0);
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(5, 0, q(3.0)), 1.0);
        assert_eq!(q_binomial(4, 2, q(1.0)), 6.0);
        assert_eq!(exact_q_binomial(4, 2, 2), 35);
        assert_eq!(q_binomial(4, 2, q(2.0)), 35.0);
        assert_eq!(q_binomial(4, -1, q(2.0)), 0.0);
        assert_eq!(q_binomial(4, 5, q(2.0)), 0.0);
    }

    #[test]
    fn matches_exact_oracle_for_integer_q() {
        for qi in 2..=4u128 {
            for n in 0..=9u32 {
                for k in 0..=n {
                    let got = q_binomial(n as usize, k as i64, q(qi as f64));
                    assert_eq!(got, exact_q_binomial(n, k, qi) as f64, "n={n} k={k} q={qi}");
                }
            }
        }
    }

    #[test]
    fn table_examples() {
        let t = q_binomial_table(0, q(2.0));
        assert_eq!(t.rows(), &[vec![1.0]]);
        let t = q_binomial_table(2, q(1.0));
        assert_eq!(t.rows(), &[vec![1.0], vec![1.0, 1.0], vec![1.0, 2.0, 1.0]]);
        let t = q_binomial_table(3, q(2.0));
        let expected: Vec<f64> = (0..=3).map(|k| exact_q_binomial(3, k, 2) as f64).collect();
        assert_eq!(t.row(3), expected.as_slice());
        assert_eq!(t.row(3), &[1.0, 7.0, 7.0, 1.0]);
    }

    #[test]
    fn table_agrees_with_q_binomial() {
        for &qv in &[0.5, 1.0, 1.5, 3.0, -0.7] {
            let t = q_binomial_table(8, q(qv));
            for m in 0..=8 {
                for k in 0..=m {
                    assert_eq!(t.get(m, k), q_binomial(m, k as i64, q(qv)));
                }
            }
            assert_eq!(t.get(3, 4), 0.0);
        }
    }

    #[test]
    fn pascal_identity_and_symmetry() {
        for &qv in &[0.5, 1.0, 1.5, 3.0] {
            let qq = q(qv);
            for n in 1..=8usize {
                for k in 1..=n as i64 {
                    let lhs = q_binomial(n, k, qq);
                    let rhs = q_binomial(n - 1, k, qq) + qq.pow(n as i64 - k) * q_binomial(n - 1, k - 1, qq);
                    assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs(), "n={n} k={k} q={qv}");
                    let mirror = q_binomial(n, n as i64 - k, qq);
                    assert!((lhs - mirror).abs() <= 1e-12 * lhs.abs());
                }
            }
        }
    }

    #[test]
    fn reduces_to_classical_binomial_at_one() {
        for n in 0..=20usize {
            for k in 0..=n {
                assert_eq!(
                    q_binomial(n, k as i64, QParam::ONE),
                    classical_binomial(n as u64, k as u64) as f64
                );
            }
        }
    }

    #[test]
    fn continuous_at_one() {
        for n in 0..=8usize {
            for k in 0..=n as i64 {
                let at_one = q_binomial(n, k, QParam::ONE);
                for qv in [1.0 - 1e-9, 1.0 + 1e-9] {
                    assert!((q_binomial(n, k, q(qv)) - at_one).abs() <= 1e-6);
                }
            }
        }
        assert!((q_integer(6, q(1.0 + 1e-9)) - 6.0).abs() <= 1e-6);
    }
}
