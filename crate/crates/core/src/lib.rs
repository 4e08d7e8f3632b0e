//! Quantum trigonometric Bernstein bases and Bezier curves.
//!
//! The basis of degree `n` on `[a, b]` with shape parameter `q` is
//!
//! ```text
//! B^n_k(x; q) = [n, k]_q * prod_{i<k} d(a, x; q^i) * prod_{i<n-k} d(x, b; q^i)
//!                        / prod_{i<n} d(a, b; q^i)
//! ```
//!
//! with `d(x, y; q) = (q+1)/2 sin(y - x) + (q-1)/2 sin(y + x)`. At `q = 1` it
//! reduces to the circular Bernstein basis. On quarter-period intervals
//! `[k pi/2, (k+1) pi/2]` and for `q > 0` the basis is totally positive; the
//! [`shape`] module checks that claim numerically.
//!
//! ```
//! use qtrig_core::{ControlPolygon, EvalMethod, Interval, QParam, QTrigCurve};
//!
//! let polygon = ControlPolygon::new(vec![
//!     vec![0.0, 0.0],
//!     vec![1.0, 2.0],
//!     vec![2.0, 2.0],
//!     vec![3.0, 0.0],
//! ])?;
//! let curve = QTrigCurve::new(polygon, QParam::new(2.0)?, Interval::quarter_period(0))?;
//! let direct = curve.evaluate(0.5, EvalMethod::Direct);
//! let alg1 = curve.evaluate(0.5, EvalMethod::Alg1);
//! assert!((direct[0] - alg1[0]).abs() < 1e-12);
//! # Ok::<(), qtrig_core::Error>(())
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod qcalculus;
pub mod rational;
pub mod shape;

pub use basis::{
    basis_all_recurrence1, basis_all_recurrence2, basis_value_direct, classical_trig_basis, BasisVector, QTrigBasis,
    Recurrence,
};
pub use curve::{
    evaluate_alg1, evaluate_alg2, evaluate_direct, intermediate_explicit, sample_curve, tn_membership_residual,
    Algorithm, ControlPolygon, CurveSample, DeCasteljauTableau, EvalMethod, QTrigCurve, SampleSource,
};
pub use error::{Error, Result};
pub use geometry::{convex_hull, in_convex_hull, Line, Point2};
pub use kernel::{certify_interval, circular_barycentric, d_kernel, Interval, ValidityCertificate};
pub use qcalculus::{q_binomial, q_binomial_table, q_factorial, q_integer, QBinomialTable, QParam};
pub use rational::{
    chord_distance_profile, rational_basis_all, rational_evaluate, rational_sample, RationalBasis, RationalCurve,
    WeightVector,
};
pub use shape::{
    collocation, minor_count, monomial_tp_reference, sign_changes_function, sign_changes_seq, total_positivity_check,
    BasisFamily, CollocationMatrix, MinorIndex, SignSequence, TPReport,
};
