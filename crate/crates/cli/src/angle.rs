//! Parsing of angles such as `pi/2`, `-3pi/4`, `2*pi/3`, `π` or `0.25`.

use std::f64::consts::PI;

use crate::error::{CliError, Result};
use qtrig_core::Interval;

fn number(s: &str, whole: &str) -> Result<f64> {
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("cannot parse angle '{whole}'")))
}

/// Parses `[sign][coef][*](pi|π)[/den]`, `num/den` or a plain number.
///
/// Rational multiples of pi are formed as `coef * PI / den` so quarter
/// periods like `3pi/2` land on the same value as `3.0 * FRAC_PI_2`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let s = text.trim();
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1.0, rest.trim_start()),
        None => (1.0, s.strip_prefix('+').unwrap_or(s).trim_start()),
    };
    let lower = body.to_ascii_lowercase();
    let pi_at = lower
        .find("pi")
        .map(|i| (i, 2))
        .or_else(|| body.find('π').map(|i| (i, 'π'.len_utf8())));
    let value = match pi_at {
        Some((i, width)) => {
            let coef_text = body[..i].trim().trim_end_matches('*').trim();
            let coef = if coef_text.is_empty() {
                1.0
            } else {
                number(coef_text, text)?
            };
            let rest = body[i + width..].trim();
            let den = match rest.strip_prefix('/') {
                Some(d) => number(d, text)?,
                None if rest.is_empty() => 1.0,
                None => return Err(CliError::Usage(format!("cannot parse angle '{text}'"))),
            };
            if den == 0.0 {
                return Err(CliError::Usage(format!("zero denominator in angle '{text}'")));
            }
            coef * PI / den
        }
        None => match body.split_once('/') {
            Some((num, den)) => {
                let den = number(den, text)?;
                if den == 0.0 {
                    return Err(CliError::Usage(format!("zero denominator in angle '{text}'")));
                }
                number(num, text)? / den
            }
            None => number(body, text)?,
        },
    };
    Ok(sign * value)
}

/// Parses `"a,b"` into an interval.
pub fn parse_interval(text: &str) -> Result<Interval> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("interval must be 'a,b', got '{text}'")))?;
    Ok(Interval::new(parse_angle(a)?, parse_angle(b)?)?)
}

/// Parses a comma-separated list of reals.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("cannot parse number '{v}' in '{text}'")))
        })
        .collect()
}
