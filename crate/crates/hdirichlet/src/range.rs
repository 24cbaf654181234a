//! Parsing of integer ranges, real grids and points given on the command line.

use crate::{Error, Result};

fn parse_error(what: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        what,
        input: input.to_string(),
        reason: reason.into(),
    }
}

/// `a..b` (inclusive), a single integer, or a comma-separated list.
pub fn parse_int_range(input: &str) -> Result<Vec<usize>> {
    let what = "integer range";
    let int = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|e| parse_error(what, input, e.to_string()))
    };
    if let Some((a, b)) = input.split_once("..") {
        let (a, b) = (int(a)?, int(b)?);
        if a > b {
            return Err(parse_error(what, input, "empty range"));
        }
        return Ok((a..=b).collect());
    }
    input.split(',').map(int).collect()
}

/// `a:b:step` (inclusive of `b` up to rounding), a single real, or a comma-separated list.
pub fn parse_real_grid(input: &str) -> Result<Vec<f64>> {
    let what = "real grid";
    let real = |s: &str| {
        let v = s
            .trim()
            .parse::<f64>()
            .map_err(|e| parse_error(what, input, e.to_string()))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(parse_error(what, input, "non-finite value"))
        }
    };
    let parts: Vec<&str> = input.split(':').collect();
    match parts.as_slice() {
        [a, b, step] => {
            let (a, b, step) = (real(a)?, real(b)?, real(step)?);
            if step.is_nan() || step <= 0.0 {
                return Err(parse_error(what, input, "step must be positive"));
            }
            if a > b {
                return Err(parse_error(what, input, "empty range"));
            }
            let count = ((b - a) / step + 1e-9).floor() as usize + 1;
            Ok((0..count).map(|i| a + i as f64 * step).collect())
        }
        [single] => single.split(',').map(real).collect(),
        _ => Err(parse_error(
            what,
            input,
            "expected a:b:step, a value, or a comma-separated list",
        )),
    }
}

/// The `a:b:step` triple itself, for grids handed to the scanner.
pub fn parse_grid_spec(input: &str) -> Result<(f64, f64, f64)> {
    let what = "s grid";
    let parts: Vec<f64> = input
        .split(':')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| parse_error(what, input, e.to_string()))
        })
        .collect::<Result<_>>()?;
    match *parts.as_slice() {
        [a, b, step] if step > 0.0 && a <= b => Ok((a, b, step)),
        [a, b, _] if a > b => Err(parse_error(what, input, "empty range")),
        [_, _, _] => Err(parse_error(what, input, "step must be positive")),
        _ => Err(parse_error(what, input, "expected a:b:step")),
    }
}

/// Comma-separated coordinates of a point of dimension `n`.
pub fn parse_point(input: &str, n: usize) -> Result<Vec<f64>> {
    let what = "point";
    let coords: Vec<f64> = input
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|e| parse_error(what, input, e.to_string()))
        })
        .collect::<Result<_>>()?;
    if coords.len() != n {
        return Err(parse_error(
            what,
            input,
            format!("expected {n} coordinates, got {}", coords.len()),
        ));
    }
    Ok(coords)
}
