//! Subcommand implementations. Each returns the text to emit and whether
//! the run passed; the binary maps that onto exit codes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::angle::{parse_interval, parse_list};
use crate::args::*;
use crate::error::{CliError, Result};
use crate::output::{Format, Plot, PlotKind, Series};
use crate::polygon_file::PolygonFile;
use qtrig_core::{
    collocation, convex_hull, in_convex_hull, sign_changes_function, sign_changes_seq, total_positivity_check,
    BasisFamily, ControlPolygon, EvalMethod, Interval, Line, Point2, QParam, QTrigBasis, QTrigCurve, RationalBasis,
    RationalCurve, SignSequence, WeightVector,
};

/// Curve samples used when counting line crossings.
pub const VDP_CURVE_SAMPLES: usize = 2048;

const DEFAULT_SAMPLES: usize = 129;
const DEFAULT_SIGN_SAMPLES: usize = 512;

/// Result of running one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Text for the output file or standard output.
    pub output: String,
    /// False when a shape check found a violation.
    pub passed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self { output, passed: true }
    }
}

impl From<MethodArg> for EvalMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Direct => EvalMethod::Direct,
            MethodArg::Alg1 => EvalMethod::Alg1,
            MethodArg::Alg2 => EvalMethod::Alg2,
        }
    }
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
            FormatArg::Svg => Format::Svg,
        }
    }
}

struct Config {
    qs: Vec<QParam>,
    interval: Interval,
    samples: usize,
}

impl Config {
    fn from_common(common: &CommonArgs, default_samples: usize) -> Result<Self> {
        let qs = common
            .q
            .iter()
            .map(|&q| QParam::new(q))
            .collect::<qtrig_core::Result<Vec<_>>>()?;
        let samples = common.samples.unwrap_or(default_samples);
        if samples < 2 {
            return Err(CliError::Usage(format!("--samples must be at least 2, got {samples}")));
        }
        Ok(Self {
            qs,
            interval: parse_interval(&common.interval)?,
            samples,
        })
    }

    fn grid(&self) -> Vec<f64> {
        self.interval.uniform_grid(self.samples)
    }
}

pub fn run(command: &Command) -> Result<Outcome> {
    match command {
        Command::Basis(args) => cmd_basis(args),
        Command::Curve(args) => cmd_curve(args),
        Command::Rational(args) => cmd_rational(args),
        Command::Check(args) => cmd_check(args),
    }
}

fn render(plot: &Plot, common: &CommonArgs) -> Result<Outcome> {
    Ok(Outcome::ok(plot.render(common.format.into(), common.round)?))
}

pub fn cmd_basis(args: &BasisArgs) -> Result<Outcome> {
    let cfg = Config::from_common(&args.common, DEFAULT_SAMPLES)?;
    let grid = cfg.grid();
    let series = cfg
        .qs
        .iter()
        .map(|&q| {
            let basis = QTrigBasis::new(args.degree, q, cfg.interval)?;
            Ok(Series {
                q: q.value(),
                xs: grid.clone(),
                values: grid.iter().map(|&x| basis.values_direct(x).values).collect(),
            })
        })
        .collect::<Result<_>>()?;
    let plot = Plot {
        kind: PlotKind::Basis { prefix: 'B' },
        series,
        control_polygon: None,
    };
    render(&plot, &args.common)
}

pub fn cmd_curve(args: &CurveArgs) -> Result<Outcome> {
    let cfg = Config::from_common(&args.common, DEFAULT_SAMPLES)?;
    let file = PolygonFile::load(&args.polygon)?;
    let polygon = file.polygon()?;
    let series = cfg
        .qs
        .iter()
        .map(|&q| {
            let curve = QTrigCurve::new(polygon.clone(), q, cfg.interval)?;
            let samples = curve.sample(cfg.samples, args.method.into())?;
            Ok(Series {
                q: q.value(),
                xs: samples.iter().map(|s| s.x).collect(),
                values: samples.into_iter().map(|s| s.point).collect(),
            })
        })
        .collect::<Result<_>>()?;
    let plot = Plot {
        kind: PlotKind::Curve,
        series,
        control_polygon: Some(polygon.points().to_vec()),
    };
    render(&plot, &args.common)
}

fn parse_weights(text: Option<&String>) -> Result<Option<Vec<f64>>> {
    text.map(|t| parse_list(t)).transpose()
}

pub fn cmd_rational(args: &RationalArgs) -> Result<Outcome> {
    let cfg = Config::from_common(&args.common, DEFAULT_SAMPLES)?;
    let override_weights = parse_weights(args.weights.as_ref())?;
    let file = args.polygon.as_deref().map(PolygonFile::load).transpose()?;

    if args.basis_mode {
        let weights = match (&file, &override_weights) {
            (Some(f), w) => f.weights(w.as_deref())?,
            (None, Some(w)) => WeightVector::new(w.clone())?,
            (None, None) => {
                let n = args
                    .degree
                    .ok_or_else(|| CliError::Usage("--basis-mode needs --degree, --weights or a polygon".into()))?;
                WeightVector::uniform(n)
            }
        };
        let n = weights.len() - 1;
        if let Some(d) = args.degree.filter(|&d| d != n) {
            return Err(CliError::Usage(format!(
                "--degree {d} conflicts with {} weights",
                n + 1
            )));
        }
        let grid = cfg.grid();
        let series = cfg
            .qs
            .iter()
            .map(|&q| {
                let basis = RationalBasis::new(n, q, cfg.interval, weights.clone())?;
                basis.certify()?;
                let values = grid
                    .iter()
                    .map(|&x| Ok(basis.values(x)?.values))
                    .collect::<Result<_>>()?;
                Ok(Series {
                    q: q.value(),
                    xs: grid.clone(),
                    values,
                })
            })
            .collect::<Result<_>>()?;
        let plot = Plot {
            kind: PlotKind::Basis { prefix: 'R' },
            series,
            control_polygon: None,
        };
        return render(&plot, &args.common);
    }

    let file =
        file.ok_or_else(|| CliError::Usage("rational needs a polygon file unless --basis-mode is set".into()))?;
    let polygon = file.polygon()?;
    let weights = file.weights(override_weights.as_deref())?;
    let series = cfg
        .qs
        .iter()
        .map(|&q| {
            let curve = RationalCurve::new(polygon.clone(), weights.clone(), q, cfg.interval)?;
            let samples = curve.sample(cfg.samples)?;
            Ok(Series {
                q: q.value(),
                xs: samples.iter().map(|s| s.x).collect(),
                values: samples.into_iter().map(|s| s.point).collect(),
            })
        })
        .collect::<Result<_>>()?;
    let plot = Plot {
        kind: PlotKind::Curve,
        series,
        control_polygon: Some(polygon.points().to_vec()),
    };
    render(&plot, &args.common)
}

#[derive(Debug, Serialize)]
struct Report<T: Serialize> {
    check: &'static str,
    pass: bool,
    interval: [f64; 2],
    quarter_period: bool,
    runs: Vec<T>,
}

impl<T: Serialize> Report<T> {
    fn new(check: &'static str, interval: &Interval, runs: Vec<T>, pass: bool) -> Self {
        Self {
            check,
            pass,
            interval: [interval.a(), interval.b()],
            quarter_period: interval.is_quarter_period(),
            runs,
        }
    }

    /// Human-readable lines followed by the JSON report on the last line.
    fn finish(&self, lines: Vec<String>) -> Outcome {
        let mut output = lines.join("\n");
        output.push('\n');
        output.push_str(if self.pass { "result: PASS\n" } else { "result: FAIL\n" });
        output.push_str(&serde_json::to_string(self).expect("report serializes"));
        output.push('\n');
        Outcome {
            output,
            passed: self.pass,
        }
    }
}

pub fn cmd_check(args: &CheckArgs) -> Result<Outcome> {
    match &args.check {
        Check::Tp(a) => check_tp(a),
        Check::Hull(a) => check_hull(a),
        Check::Vdp(a) => check_vdp(a),
        Check::Signs(a) => check_signs(a),
    }
}

#[derive(Debug, Serialize)]
struct TpRun {
    q: f64,
    is_tp: bool,
    minors_checked: u64,
    worst_minor: f64,
    worst_scaled: f64,
    witness: Option<(Vec<usize>, Vec<usize>)>,
}

fn check_tp(args: &TpArgs) -> Result<Outcome> {
    let cfg = Config::from_common(&args.common, DEFAULT_SAMPLES)?;
    if args.grid == 0 {
        return Err(CliError::Usage("--grid must be positive".into()));
    }
    let iv = cfg.interval;
    let points: Vec<f64> = (1..=args.grid)
        .map(|j| iv.a() + iv.len() * j as f64 / (args.grid + 1) as f64)
        .collect();
    let family = match parse_weights(args.weights.as_ref())? {
        Some(w) => {
            let w = WeightVector::new(w)?;
            if w.len() != args.degree + 1 {
                return Err(CliError::Core(qtrig_core::Error::LengthMismatch {
                    expected: args.degree + 1,
                    found: w.len(),
                }));
            }
            BasisFamily::Rational(w)
        }
        None => BasisFamily::Quantum,
    };
    let mut runs = Vec::new();
    let mut lines = vec![format!(
        "total positivity: degree {}, {} interior points on [{}, {}], tolerance {:e}",
        args.degree,
        args.grid,
        iv.a(),
        iv.b(),
        args.tolerance
    )];
    for &q in &cfg.qs {
        let m = collocation(&family, args.degree, q, &iv, &points)?;
        let r = total_positivity_check(&m, args.tolerance)?;
        lines.push(format!(
            "  q = {}: {} ({} minors, worst scaled minor {:e})",
            q,
            if r.is_tp { "pass" } else { "FAIL" },
            r.minors_checked,
            r.worst_scaled
        ));
        runs.push(TpRun {
            q: q.value(),
            is_tp: r.is_tp,
            minors_checked: r.minors_checked,
            worst_minor: r.worst_minor,
            worst_scaled: r.worst_scaled,
            witness: r.witness.map(|w| (w.rows, w.cols)),
        });
    }
    let pass = runs.iter().all(|r| r.is_tp);
    Ok(Report::new("tp", &iv, runs, pass).finish(lines))
}

fn planar(polygon: &ControlPolygon) -> Result<Vec<Point2>> {
    polygon
        .points()
        .iter()
        .map(|p| Ok(qtrig_core::geometry::to_point2(p)?))
        .collect()
}

#[derive(Debug, Serialize)]
struct HullRun {
    q: f64,
    shape_guarantee: bool,
    samples: usize,
    outside: usize,
    first_outside_x: Option<f64>,
}

fn check_hull(args: &ShapeArgs) -> Result<Outcome> {
    let cfg = Config::from_common(&args.common, DEFAULT_SAMPLES)?;
    let file = PolygonFile::load(&args.polygon)?;
    let polygon = file.polygon()?;
    let ctrl = planar(&polygon)?;
    let weights = file.weights(parse_weights(args.weights.as_ref())?.as_deref())?;
    let hull = convex_hull(&ctrl);
    let mut lines = vec![format!(
        "convex hull: {} control points, {} samples",
        ctrl.len(),
        cfg.samples
    )];
    let mut runs = Vec::new();
    for &q in &cfg.qs {
        let curve = RationalCurve::new(polygon.clone(), weights.clone(), q, cfg.interval)?;
        let samples = curve.sample(cfg.samples)?;
        let outside: Vec<f64> = samples
            .iter()
            .filter(|s| !in_convex_hull(&hull, [s.point[0], s.point[1]], args.tolerance))
            .map(|s| s.x)
            .collect();
        lines.push(format!(
            "  q = {}: {} samples outside{}",
            q,
            outside.len(),
            if curve.shape_guarantee() {
                ""
            } else {
                " (no shape guarantee)"
            }
        ));
        runs.push(HullRun {
            q: q.value(),
            shape_guarantee: curve.shape_guarantee(),
            samples: samples.len(),
            outside: outside.len(),
            first_outside_x: outside.first().copied(),
        });
    }
    let pass = runs.iter().all(|r| r.outside == 0);
    Ok(Report::new("hull", &cfg.interval, runs, pass).finish(lines))
}

#[derive(Debug, Serialize)]
struct VdpRun {
    q: f64,
    shape_guarantee: bool,
    lines: usize,
    violations: usize,
    max_curve_crossings: usize,
    max_polygon_crossings: usize,
}

fn check_vdp(args: &ShapeArgs) -> Result<Outcome> {
    let cfg = Config::from_common(&args.common, DEFAULT_SAMPLES)?;
    let file = PolygonFile::load(&args.polygon)?;
    let polygon = file.polygon()?;
    let ctrl = planar(&polygon)?;
    let weights = file.weights(parse_weights(args.weights.as_ref())?.as_deref())?;
    let (lo, hi) = ctrl
        .iter()
        .fold(([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]), |(lo, hi), p| {
            ([lo[0].min(p[0]), lo[1].min(p[1])], [hi[0].max(p[0]), hi[1].max(p[1])])
        });
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let test_lines: Vec<Line> = (0..args.grid)
        .map(|_| {
            let origin = [sample_in(&mut rng, lo[0], hi[0]), sample_in(&mut rng, lo[1], hi[1])];
            let angle: f64 = rng.gen_range(0.0..std::f64::consts::PI);
            Line::new(origin, [angle.cos(), angle.sin()]).expect("unit direction")
        })
        .collect();
    let mut lines = vec![format!(
        "variation diminishing: {} random lines, {} curve samples",
        test_lines.len(),
        VDP_CURVE_SAMPLES
    )];
    let mut runs = Vec::new();
    for &q in &cfg.qs {
        let curve = RationalCurve::new(polygon.clone(), weights.clone(), q, cfg.interval)?;
        let pts: Vec<Point2> = curve
            .sample(VDP_CURVE_SAMPLES)?
            .iter()
            .map(|s| [s.point[0], s.point[1]])
            .collect();
        let mut run = VdpRun {
            q: q.value(),
            shape_guarantee: curve.shape_guarantee(),
            lines: test_lines.len(),
            violations: 0,
            max_curve_crossings: 0,
            max_polygon_crossings: 0,
        };
        for line in &test_lines {
            let (c, p) = (line.crossings(&pts), line.crossings(&ctrl));
            run.violations += usize::from(c > p);
            run.max_curve_crossings = run.max_curve_crossings.max(c);
            run.max_polygon_crossings = run.max_polygon_crossings.max(p);
        }
        lines.push(format!(
            "  q = {}: {} violations (max crossings: curve {}, polygon {})",
            q, run.violations, run.max_curve_crossings, run.max_polygon_crossings
        ));
        runs.push(run);
    }
    let pass = runs.iter().all(|r| r.violations == 0);
    Ok(Report::new("vdp", &cfg.interval, runs, pass).finish(lines))
}

fn sample_in(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    if hi > lo {
        rng.gen_range(lo..hi)
    } else {
        lo
    }
}

#[derive(Debug, Serialize)]
struct SignsRun {
    q: f64,
    control_sign_changes: usize,
    curve_sign_changes: usize,
}

fn check_signs(args: &SignsArgs) -> Result<Outcome> {
    let cfg = Config::from_common(&args.common, DEFAULT_SIGN_SAMPLES)?;
    let controls = match (&args.controls, &args.polygon) {
        (Some(text), _) => parse_list(text)?,
        (None, Some(path)) => {
            let file = PolygonFile::load(path)?;
            if file.points[0].len() != 1 {
                return Err(CliError::Usage("signs needs scalar (1D) control points".into()));
            }
            file.points.iter().map(|p| p[0]).collect()
        }
        (None, None) => return Err(CliError::Usage("signs needs --controls or a polygon file".into())),
    };
    let polygon = ControlPolygon::from_scalars(&controls)?;
    let bound = sign_changes_seq(&SignSequence::new(controls.clone()));
    let mut lines = vec![format!("sign changes: controls {controls:?} have {bound}")];
    let mut runs = Vec::new();
    for &q in &cfg.qs {
        let curve = QTrigCurve::new(polygon.clone(), q, cfg.interval)?;
        let values: Vec<f64> = curve
            .sample(cfg.samples, args.method.into())?
            .iter()
            .map(|s| s.point[0])
            .collect();
        let changes = sign_changes_function(&values);
        lines.push(format!(
            "  q = {q}: curve has {changes} sign changes over {} samples",
            cfg.samples
        ));
        runs.push(SignsRun {
            q: q.value(),
            control_sign_changes: bound,
            curve_sign_changes: changes,
        });
    }
    let pass = runs.iter().all(|r| r.curve_sign_changes <= r.control_sign_changes);
    Ok(Report::new("signs", &cfg.interval, runs, pass).finish(lines))
}
