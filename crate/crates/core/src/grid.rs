//! Parameter grids written as explicit lists or `start:stop:step` ranges.
//!
//! Ranges are stepped in decimal: every point is produced as an exact
//! decimal string and only then converted, so `0:1:0.1` yields the doubles
//! nearest to 0.3, 0.7, ... rather than accumulated binary error.

use crate::error::{Error, Result};

/// A decimal number as `mantissa · 10^-scale`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Decimal {
    mantissa: i128,
    scale: u32,
}

impl Decimal {
    fn parse(text: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("`{text}` is not a decimal number"));
        let t = text.trim();
        let (negative, digits) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if int_part.len() + frac_part.len() > 30 {
            return Err(bad());
        }
        let joined = format!("{int_part}{frac_part}");
        let mantissa: i128 = joined.parse().map_err(|_| bad())?;
        Ok(Decimal {
            mantissa: if negative { -mantissa } else { mantissa },
            scale: frac_part.len() as u32,
        })
    }

    fn rescale(self, scale: u32) -> i128 {
        self.mantissa * 10i128.pow(scale - self.scale)
    }
}

fn to_f64(mantissa: i128, scale: u32) -> f64 {
    let digits = mantissa.unsigned_abs().to_string();
    let sign = if mantissa < 0 { "-" } else { "" };
    let text = if scale == 0 {
        format!("{sign}{digits}")
    } else {
        let scale = scale as usize;
        let padded = format!("{digits:0>width$}", width = scale + 1);
        let (int_part, frac_part) = padded.split_at(padded.len() - scale);
        format!("{sign}{int_part}.{frac_part}")
    };
    text.parse().expect("formatted decimal parses")
}

const MAX_POINTS: i128 = 1_000_000;

/// Expands `start:stop:step` (inclusive of `stop` when it lies on the grid).
pub fn decimal_range(start: &str, stop: &str, step: &str) -> Result<Vec<f64>> {
    let (a, b, s) = (Decimal::parse(start)?, Decimal::parse(stop)?, Decimal::parse(step)?);
    let scale = a.scale.max(b.scale).max(s.scale);
    let (a, b, s) = (a.rescale(scale), b.rescale(scale), s.rescale(scale));
    if s <= 0 {
        return Err(Error::invalid(format!("range step `{step}` must be positive")));
    }
    if b < a {
        return Err(Error::invalid(format!("range stop `{stop}` is below start `{start}`")));
    }
    let count = (b - a) / s + 1;
    if count > MAX_POINTS {
        return Err(Error::invalid(format!("range has {count} points, too many")));
    }
    Ok((0..count).map(|i| to_f64(a + i * s, scale)).collect())
}

/// Parses a grid written either as `start:stop:step` or as a comma-separated
/// list of values.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [start, stop, step] => decimal_range(start, stop, step),
        [_] => parse_list(text),
        _ => Err(Error::invalid(format!(
            "grid `{text}` must be a list or start:stop:step"
        ))),
    }
}

/// Parses a comma-separated list of reals.
pub fn parse_list(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::invalid(format!("`{s}` is not a number")))
        })
        .collect()
}
