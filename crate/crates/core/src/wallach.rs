//! Real-`s` scans of the continued coefficients and the sign structure they
//! reveal: intervals where every mode is positive, and the poles where all
//! residues share a sign.

use crate::coefficients::{coeff_continued, coeff_residue, is_pole_location, pole_distance, Coefficient};
use crate::math::{floor, round};
use crate::{domain, Error, Result};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

/// Grid points this close to the pole lattice are snapped onto it.
pub const SNAP_TOLERANCE: f64 = 1e-9;
/// Values this close to the pole lattice are flagged.
pub const NEAR_POLE: f64 = 1e-3;
/// Default highest mode of a scan.
pub const DEFAULT_MAX_MODE: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Sign {
    #[cfg_attr(feature = "serde", serde(rename = "+"))]
    Positive,
    #[cfg_attr(feature = "serde", serde(rename = "-"))]
    Negative,
    #[cfg_attr(feature = "serde", serde(rename = "0"))]
    Zero,
    #[cfg_attr(feature = "serde", serde(rename = "pole"))]
    Pole,
}

impl Sign {
    pub fn of(v: f64) -> Self {
        if v > 0.0 {
            Sign::Positive
        } else if v < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
            Sign::Zero => "0",
            Sign::Pole => "pole",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ScanRecord {
    pub n: usize,
    pub m: usize,
    pub s: f64,
    /// `None` at a pole.
    pub value: Option<f64>,
    pub sign: Sign,
    pub method: String,
    pub grid_id: String,
    /// Residue estimate at a pole.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub residue: Option<f64>,
    /// Within [`NEAR_POLE`] of the lattice without being on it.
    #[cfg_attr(feature = "serde", serde(skip))]
    pub near_pole: bool,
}

/// A uniform real grid `s_min, s_min + step, ..., <= s_max`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanGrid {
    pub n: usize,
    pub max_mode: usize,
    pub s_min: f64,
    pub s_max: f64,
    pub step: f64,
}

impl ScanGrid {
    pub fn new(n: usize, max_mode: usize, s_min: f64, s_max: f64, step: f64) -> Result<Self> {
        if n < 3 {
            return Err(domain("n", format!("dimension {n} < 3")));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(domain("step", format!("step {step} must be positive")));
        }
        if !(s_min <= s_max) || !s_min.is_finite() || !s_max.is_finite() {
            return Err(domain("s", format!("empty range [{s_min}, {s_max}]")));
        }
        if max_mode == 0 {
            return Err(domain("m_max", "at least one mode is required"));
        }
        Ok(Self {
            n,
            max_mode,
            s_min,
            s_max,
            step,
        })
    }

    /// Grid points, with lattice points snapped exactly onto the lattice.
    pub fn points(&self) -> Vec<f64> {
        let count = floor((self.s_max - self.s_min) / self.step + 1e-9) as usize + 1;
        (0..count)
            .map(|i| {
                let s = self.s_min + i as f64 * self.step;
                snap(self.n, s)
            })
            .collect()
    }

    /// Identifier recorded in every record of this grid.
    pub fn id(&self) -> String {
        format!(
            "n{}-m{}-s{:e}:{:e}:{:e}",
            self.n, self.max_mode, self.s_min, self.s_max, self.step
        )
    }
}

fn snap(n: usize, s: f64) -> f64 {
    let candidates = [round(s), round(2.0 * s) / 2.0];
    for c in candidates {
        if (s - c).abs() <= SNAP_TOLERANCE && is_pole_location(n, c) {
            return c;
        }
    }
    s
}

/// The record of one `(m, s)` cell.
pub fn scan_cell(n: usize, m: usize, s: f64, grid_id: &str) -> Result<ScanRecord> {
    let s = snap(n, s);
    let c = coeff_continued(n, m, s)?;
    let (value, sign) = match c.value {
        Coefficient::Finite(v) => (Some(v), Sign::of(v)),
        Coefficient::Pole { .. } => (None, Sign::Pole),
    };
    Ok(ScanRecord {
        n,
        m,
        s,
        value,
        sign,
        method: String::from(c.method.as_str()),
        grid_id: String::from(grid_id),
        residue: c.residue,
        near_pole: !is_pole_location(n, s) && pole_distance(n, s) < NEAR_POLE,
    })
}

/// One record per `(m, s)`, `m = 1..=m_max`, ordered by `(m, s)`.
pub fn scan(n: usize, m_max: usize, s_min: f64, s_max: f64, step: f64) -> Result<Vec<ScanRecord>> {
    let grid = ScanGrid::new(n, m_max, s_min, s_max, step)?;
    let id = grid.id();
    let points = grid.points();
    let mut out = Vec::with_capacity(points.len() * m_max);
    for m in 1..=m_max {
        for &s in &points {
            out.push(scan_cell(n, m, s, &id)?);
        }
    }
    Ok(out)
}

/// Sorts records by `(m, s)`.
pub fn sort_records(records: &mut [ScanRecord]) {
    records.sort_by(|a, b| a.m.cmp(&b.m).then(a.s.total_cmp(&b.s)));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Classification {
    AllPositive,
    SomeNegative,
    PoleBoundary,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::AllPositive => "all-positive",
            Classification::SomeNegative => "some-negative",
            Classification::PoleBoundary => "pole-boundary",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PositivityInterval {
    pub n: usize,
    pub m_min: usize,
    pub m_max: usize,
    pub s_start: f64,
    pub s_end: f64,
    pub classification: Classification,
    /// At a pole: the common sign of all residues, if they share one.
    pub residue_sign: Option<Sign>,
    /// At a pole: every mode has a pole there and all residues share a sign.
    pub level_one_candidate: bool,
}

/// Maximal runs of consecutive grid points with the same classification.
///
/// A point is a pole boundary when some mode has a pole there, negative when
/// some mode is negative (or zero), and positive otherwise. Pole points are
/// reported individually with a summary of their residue signs.
pub fn classify(records: &[ScanRecord]) -> Result<Vec<PositivityInterval>> {
    let first = records.first().ok_or(Error::Empty("no scan records"))?;
    let n = first.n;
    if records.iter().any(|r| r.n != n) {
        return Err(domain("n", "records from different dimensions"));
    }
    let m_min = records.iter().map(|r| r.m).min().unwrap_or(0);
    let m_max = records.iter().map(|r| r.m).max().unwrap_or(0);
    let mut by_s: Vec<&ScanRecord> = records.iter().collect();
    by_s.sort_by(|a, b| a.s.total_cmp(&b.s).then(a.m.cmp(&b.m)));

    let mut out: Vec<PositivityInterval> = Vec::new();
    let mut i = 0;
    while i < by_s.len() {
        let s = by_s[i].s;
        let mut j = i;
        while j < by_s.len() && by_s[j].s == s {
            j += 1;
        }
        let column = &by_s[i..j];
        let point = classify_point(n, s, column)?;
        match out.last_mut() {
            Some(last)
                if last.classification == point.classification
                    && point.classification != Classification::PoleBoundary =>
            {
                last.s_end = s;
            }
            _ => out.push(PositivityInterval { m_min, m_max, ..point }),
        }
        i = j;
    }
    Ok(out)
}

fn classify_point(n: usize, s: f64, column: &[&ScanRecord]) -> Result<PositivityInterval> {
    let mut interval = PositivityInterval {
        n,
        m_min: 0,
        m_max: 0,
        s_start: s,
        s_end: s,
        classification: Classification::AllPositive,
        residue_sign: None,
        level_one_candidate: false,
    };
    if column.iter().any(|r| r.sign == Sign::Pole) {
        interval.classification = Classification::PoleBoundary;
        let mut signs = Vec::with_capacity(column.len());
        for r in column {
            let residue = match (r.sign, r.residue) {
                (Sign::Pole, Some(v)) => Some(v),
                (Sign::Pole, None) => Some(coeff_residue(n, r.m, s)?),
                _ => None,
            };
            signs.push(residue.map(Sign::of));
        }
        let every_mode_poles = signs.iter().all(Option::is_some);
        let common = signs.first().copied().flatten();
        let uniform = common.is_some() && signs.iter().all(|&x| x == common);
        if uniform {
            interval.residue_sign = common;
        }
        interval.level_one_candidate = every_mode_poles && uniform;
    } else if column.iter().any(|r| r.sign != Sign::Positive) {
        interval.classification = Classification::SomeNegative;
    }
    Ok(interval)
}
