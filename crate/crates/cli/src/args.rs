use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qtrig",
    version,
    about = "Quantum trigonometric Bezier curves: sampling, plotting and shape checks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample the basis functions B^n_0..B^n_n over the interval.
    Basis(BasisArgs),
    /// Sample a quantum trigonometric Bezier curve from a polygon file.
    Curve(CurveArgs),
    /// Sample a rational curve (or, with --basis-mode, the rational basis).
    Rational(RationalArgs),
    /// Run a shape check; exit code 4 when the property is violated.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Direct,
    Alg1,
    Alg2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Svg,
}

/// Options shared by every subcommand.
#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Shape parameter; repeat to overlay several values.
    #[arg(long = "q", value_name = "Q", default_value = "1", allow_negative_numbers = true)]
    pub q: Vec<f64>,

    /// Parameter interval "a,b" in radians; accepts forms like pi/2 or 3pi/4.
    #[arg(long, value_name = "A,B", default_value = "0,pi/2", allow_hyphen_values = true)]
    pub interval: String,

    /// Number of uniformly spaced samples (endpoints included).
    #[arg(long)]
    pub samples: Option<usize>,

    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    pub format: FormatArg,

    /// Output file; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Round CSV/JSON values to this many significant digits.
    #[arg(long, value_name = "DIGITS")]
    pub round: Option<usize>,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[arg(long)]
    pub degree: usize,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    /// Polygon JSON file.
    pub polygon: PathBuf,

    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    pub method: MethodArg,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct RationalArgs {
    /// Polygon JSON file; optional with --basis-mode.
    pub polygon: Option<PathBuf>,

    /// Comma-separated weights, overriding those in the polygon file.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,

    /// Sample the rational basis functions instead of a curve.
    #[arg(long)]
    pub basis_mode: bool,

    /// Degree for --basis-mode when no polygon or weights are given.
    #[arg(long)]
    pub degree: Option<usize>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(subcommand)]
    pub check: Check,
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Exhaustive minor check of the collocation matrix on interior grid points.
    Tp(TpArgs),
    /// Line-crossing counts of the rational curve versus its control polygon.
    Vdp(ShapeArgs),
    /// Rational curve samples lie in the convex hull of the control points.
    Hull(ShapeArgs),
    /// Sign changes of a scalar curve versus its control values.
    Signs(SignsArgs),
}

#[derive(Debug, Args)]
pub struct TpArgs {
    #[arg(long)]
    pub degree: usize,

    /// Number of equally spaced interior collocation points.
    #[arg(long, default_value_t = 6)]
    pub grid: usize,

    /// Scaled tolerance on negative minors.
    #[arg(long, default_value_t = 1e-9)]
    pub tolerance: f64,

    /// Check the rational basis with these weights instead.
    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    /// Polygon JSON file (2D points).
    pub polygon: PathBuf,

    #[arg(long, allow_hyphen_values = true)]
    pub weights: Option<String>,

    /// Number of random test lines (vdp only).
    #[arg(long, default_value_t = 50)]
    pub grid: usize,

    /// Seed for the random test lines.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Slack on the hull predicate.
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SignsArgs {
    /// Polygon JSON file with 1D points; alternatively use --controls.
    pub polygon: Option<PathBuf>,

    /// Comma-separated scalar control values.
    #[arg(long, allow_hyphen_values = true)]
    pub controls: Option<String>,

    #[arg(long, value_enum, default_value_t = MethodArg::Direct)]
    pub method: MethodArg,

    #[command(flatten)]
    pub common: CommonArgs,
}
