//! CSV, JSON and SVG writers for sampled series.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl std::str::FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            "svg" => Ok(Self::Svg),
            other => Err(CliError::Usage(format!(
                "unknown format '{other}' (expected csv, json or svg)"
            ))),
        }
    }
}

/// What the sampled values represent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    /// Columns are basis functions named `{prefix}0..{prefix}n`; plotted against x.
    Basis { prefix: char },
    /// Columns are point coordinates `p1..pd`.
    Curve,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub q: f64,
    pub xs: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Plot {
    pub kind: PlotKind,
    pub series: Vec<Series>,
    /// Drawn as a dashed polyline with markers in SVG output.
    pub control_polygon: Option<Vec<Vec<f64>>>,
}

/// Stroke colours assigned to successive q values.
const PALETTE: [&str; 8] = ["blue", "green", "red", "orange", "purple", "brown", "magenta", "black"];

impl Plot {
    fn width(&self) -> usize {
        self.series.first().and_then(|s| s.values.first()).map_or(0, Vec::len)
    }

    fn multi_q(&self) -> bool {
        self.series.len() > 1
    }

    /// Applies `round_values` to every column of every series.
    pub fn rounded(&self, digits: Option<usize>) -> Plot {
        let Some(digits) = digits else {
            return self.clone();
        };
        let mut out = self.clone();
        for s in &mut out.series {
            for c in 0..self.width() {
                let scale = s.values.iter().fold(0.0f64, |m, row| m.max(row[c].abs()));
                for row in &mut s.values {
                    row[c] = round_value(row[c], digits, scale);
                }
            }
            for x in &mut s.xs {
                *x = round_value(*x, digits, x.abs());
            }
        }
        out
    }

    pub fn render(&self, format: Format, digits: Option<usize>) -> Result<String> {
        let plot = self.rounded(digits);
        match format {
            Format::Csv => Ok(plot.to_csv()),
            Format::Json => Ok(plot.to_json()),
            Format::Svg => plot.to_svg(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let mut header: Vec<String> = Vec::new();
        if self.multi_q() {
            header.push("q".into());
        }
        header.push("x".into());
        match self.kind {
            PlotKind::Basis { prefix } => header.extend((0..self.width()).map(|k| format!("{prefix}{k}"))),
            PlotKind::Curve => header.extend((1..=self.width()).map(|k| format!("p{k}"))),
        }
        out.push_str(&header.join(","));
        out.push('\n');
        for s in &self.series {
            for (x, row) in s.xs.iter().zip(&s.values) {
                let mut fields = Vec::with_capacity(row.len() + 2);
                if self.multi_q() {
                    fields.push(fmt_num(s.q));
                }
                fields.push(fmt_num(*x));
                fields.extend(row.iter().map(|&v| fmt_num(v)));
                out.push_str(&fields.join(","));
                out.push('\n');
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Entry<'a> {
            q: f64,
            x: f64,
            point: &'a [f64],
        }
        let entries: Vec<Entry> = self
            .series
            .iter()
            .flat_map(|s| s.xs.iter().zip(&s.values).map(|(&x, p)| Entry { q: s.q, x, point: p }))
            .collect();
        let mut text = serde_json::to_string_pretty(&entries).expect("finite values serialize");
        text.push('\n');
        text
    }

    /// Polylines in data coordinates, one per drawn curve, with their colour.
    fn polylines(&self) -> Result<Vec<(String, Vec<[f64; 2]>)>> {
        let mut lines = Vec::new();
        for (i, s) in self.series.iter().enumerate() {
            let colour = PALETTE[i % PALETTE.len()].to_string();
            match self.kind {
                PlotKind::Basis { .. } => {
                    for k in 0..self.width() {
                        let pts = s.xs.iter().zip(&s.values).map(|(&x, row)| [x, row[k]]).collect();
                        lines.push((colour.clone(), pts));
                    }
                }
                PlotKind::Curve => {
                    let pts = match self.width() {
                        1 => s.xs.iter().zip(&s.values).map(|(&x, row)| [x, row[0]]).collect(),
                        2 => s.values.iter().map(|row| [row[0], row[1]]).collect(),
                        d => {
                            return Err(CliError::Usage(format!(
                                "svg output supports 1D or 2D curves, got dimension {d}"
                            )))
                        }
                    };
                    lines.push((colour, pts));
                }
            }
        }
        Ok(lines)
    }

    pub fn to_svg(&self) -> Result<String> {
        let lines = self.polylines()?;
        let polygon: Option<Vec<[f64; 2]>> = match (&self.control_polygon, self.kind) {
            (Some(p), PlotKind::Curve) if self.width() == 2 => Some(p.iter().map(|v| [v[0], v[1]]).collect()),
            _ => None,
        };

        let all = lines.iter().flat_map(|(_, p)| p.iter()).chain(polygon.iter().flatten());
        let (mut min_x, mut max_x, mut min_y, mut max_y) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in all {
            min_x = min_x.min(p[0]);
            max_x = max_x.max(p[0]);
            min_y = min_y.min(p[1]);
            max_y = max_y.max(p[1]);
        }
        if !min_x.is_finite() {
            (min_x, max_x, min_y, max_y) = (0.0, 1.0, 0.0, 1.0);
        }
        let span = |lo: f64, hi: f64| if hi > lo { hi - lo } else { 1.0 };
        let (w, h) = (span(min_x, max_x), span(min_y, max_y));
        let (mx, my) = (0.05 * w, 0.05 * h);
        // SVG y grows downward; data y is negated.
        let view = [min_x - mx, -(max_y + my), w + 2.0 * mx, h + 2.0 * my];
        let marker = 0.01 * view[2].max(view[3]);

        let mut out = String::new();
        let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="600" viewBox="{} {} {} {}" preserveAspectRatio="none">"#,
            svg_num(view[0]),
            svg_num(view[1]),
            svg_num(view[2]),
            svg_num(view[3])
        );
        if let Some(poly) = &polygon {
            let _ = writeln!(
                out,
                r#"  <polyline class="control-polygon" fill="none" stroke="gray" stroke-width="1" stroke-dasharray="4 3" vector-effect="non-scaling-stroke" points="{}"/>"#,
                svg_points(poly)
            );
            for p in poly {
                let _ = writeln!(
                    out,
                    r#"  <circle class="control-point" cx="{}" cy="{}" r="{}" fill="gray"/>"#,
                    svg_num(p[0]),
                    svg_num(-p[1]),
                    svg_num(marker)
                );
            }
        }
        let per_series = lines.len() / self.series.len().max(1);
        for (i, (colour, pts)) in lines.iter().enumerate() {
            let q = self.series[i / per_series.max(1)].q;
            let _ = writeln!(
                out,
                r#"  <polyline fill="none" stroke="{colour}" stroke-width="1.5" vector-effect="non-scaling-stroke" points="{}"><title>q={}</title></polyline>"#,
                svg_points(pts),
                fmt_num(q)
            );
        }
        out.push_str("</svg>\n");
        Ok(out)
    }
}

/// Rounds to `digits` significant digits; magnitudes at or below
/// `scale * 10^-digits` become zero.
pub fn round_value(v: f64, digits: usize, scale: f64) -> f64 {
    let digits = digits.clamp(1, 17);
    if v == 0.0 || v.abs() <= scale * 10f64.powi(-(digits as i32)) {
        return 0.0;
    }
    format!("{:.*e}", digits - 1, v).parse().unwrap_or(v)
}

/// Shortest round-trip representation (at most 17 significant digits).
pub fn fmt_num(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    format!("{v}")
}

fn svg_num(v: f64) -> String {
    let r = round_value(v, 8, 0.0);
    if r == 0.0 {
        "0".into()
    } else {
        format!("{r}")
    }
}

fn svg_points(pts: &[[f64; 2]]) -> String {
    pts.iter()
        .map(|p| format!("{},{}", svg_num(p[0]), svg_num(-p[1])))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_plot(kind: PlotKind, qs: &[f64]) -> Plot {
        Plot {
            kind,
            series: qs
                .iter()
                .map(|&q| Series {
                    q,
                    xs: vec![0.0, 0.5, 1.0],
                    values: vec![vec![1.0, 0.0], vec![0.5, 0.25 * q], vec![0.0, 1.0]],
                })
                .collect(),
            control_polygon: Some(vec![vec![1.0, 0.0], vec![0.0, 1.0]]),
        }
    }

    #[test]
    fn csv_headers() {
        let csv = sample_plot(PlotKind::Basis { prefix: 'B' }, &[2.0]).to_csv();
        assert!(csv.starts_with("x,B0,B1\n0,1,0\n0.5,0.5,0.5\n"));
        let csv = sample_plot(PlotKind::Curve, &[1.0, 2.0]).to_csv();
        assert!(csv.starts_with("q,x,p1,p2\n1,0,1,0\n"));
        assert_eq!(csv.lines().count(), 7);
    }

    #[test]
    fn json_entries() {
        let json = sample_plot(PlotKind::Curve, &[3.0]).to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 3);
        assert_eq!(v[1]["x"], 0.5);
        assert_eq!(v[1]["point"][1], 0.75);
    }

    #[test]
    fn svg_viewbox_has_margin() {
        let svg = sample_plot(PlotKind::Curve, &[1.0]).to_svg().unwrap();
        assert!(svg.contains(r#"viewBox="-0.05 -1.05 1.1 1.1""#), "{svg}");
        assert!(svg.contains("control-polygon"));
        assert_eq!(svg.matches("<polyline").count(), 2);
    }

    #[test]
    fn svg_rejects_3d_curves() {
        let mut plot = sample_plot(PlotKind::Curve, &[1.0]);
        for row in &mut plot.series[0].values {
            row.push(0.0);
        }
        assert!(plot.to_svg().is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(round_value(0.123456789, 3, 1.0), 0.123);
        assert_eq!(round_value(1e-17, 12, 3.0), 0.0);
        assert_eq!(round_value(-2.5e-17, 12, 3.0), 0.0);
        assert_eq!(round_value(2.9999999999999996, 12, 3.0), 3.0);
        assert_eq!(fmt_num(-0.0), "0");
        assert_eq!(fmt_num(0.1 + 0.2), "0.30000000000000004");
    }
}
