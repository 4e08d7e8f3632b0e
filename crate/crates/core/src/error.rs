use thiserror::Error;

/// Errors produced by basis evaluation, curve evaluation and shape checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape parameter q must be finite and nonzero, got {0}")]
    InvalidQ(f64),

    #[error("interval [{a}, {b}] must be finite with a < b")]
    MalformedInterval { a: f64, b: f64 },

    /// `|d(a, b; q^index)|` fell below the singularity threshold.
    #[error("interval is singular: |d(a,b;q^{index})| = {value:e} is below threshold")]
    SingularInterval { index: usize, value: f64 },

    #[error("index {index} out of range for degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },

    #[error("control polygon is empty")]
    EmptyPolygon,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("rational denominator vanishes near x = {x}: value {value:e}")]
    SingularDenominator { x: f64, value: f64 },

    #[error("sample count must be at least {min}, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("least-squares fit is ill-conditioned (condition number {condition:e})")]
    IllConditioned { condition: f64 },

    #[error("collocation points must be strictly increasing (violated at position {index})")]
    NonIncreasingPoints { index: usize },

    #[error("collocation point {x} lies outside [{a}, {b}]")]
    PointOutsideInterval { x: f64, a: f64, b: f64 },

    #[error("minor enumeration would check {count} minors, above the cap of {cap}")]
    SizeCapExceeded { count: u128, cap: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
