//! The Dirichlet seminorm in spectral form and the numerical check of its
//! Moebius invariance.

use crate::ballgeom::moebius_raw;
use crate::coefficients::coeff_circ;
use crate::harmonics::{dim_harmonics, zonal_components, SolidHarmonic, SpectrumEntry};
use crate::{domain, Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// Largest tail fraction accepted by [`invariance_experiment`].
pub const TAIL_FRACTION_LIMIT: f64 = 1e-8;
/// Largest displacement accepted by [`invariance_experiment`].
pub const MAX_DISPLACEMENT: f64 = 0.5;

/// `||f||^2 = sum_{m >= 1} I_m^circ ||f_m||^2`; the constant mode is ignored.
pub fn norm_circ_spectrum(spectrum: &[SpectrumEntry], n: usize) -> Result<f64> {
    let mut acc = 0.0;
    for e in spectrum.iter().filter(|e| e.m > 0) {
        acc += coeff_circ(n, e.m)? * e.norm_sq;
    }
    Ok(acc)
}

/// Semi-inner product of two functions given by their mode coefficients
/// along the same zonal harmonics: `sum_{m >= 1} I_m^circ dim H_m a_m b_m`.
pub fn inner_circ_zonal(n: usize, a: &[f64], b: &[f64]) -> Result<f64> {
    let mut acc = 0.0;
    for (m, (x, y)) in a.iter().zip(b).enumerate().skip(1) {
        acc += coeff_circ(n, m)? * dim_harmonics(n, m) as f64 * x * y;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct InvarianceReport {
    pub n: usize,
    pub base_degree: usize,
    pub displacement: f64,
    pub truncation: usize,
    pub extraction_radius: f64,
    pub seminorm_sq_before: f64,
    pub seminorm_sq_after: f64,
    pub relative_difference: f64,
    pub tail_fraction: f64,
}

/// Full result of one run: the report and the weighted spectrum behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct InvarianceRun {
    pub report: InvarianceReport,
    /// `I_m^circ ||f_m||^2` of the composed function, `m = 0..=M`.
    pub weighted_spectrum: Vec<f64>,
}

/// Compares the seminorm of the axial solid harmonic of degree `m0` with the
/// seminorm of its composition with `phi_{a e_1}`, whose spectrum is read off
/// on the sphere of radius `r` up to mode `M`.
pub fn invariance_experiment(n: usize, m0: usize, a: f64, truncation: usize, r: f64) -> Result<InvarianceReport> {
    let run = invariance_run(n, m0, a, truncation, r)?;
    if !(run.report.tail_fraction < TAIL_FRACTION_LIMIT) {
        return Err(Error::Truncation {
            truncation,
            tail: run.report.tail_fraction,
            tolerance: TAIL_FRACTION_LIMIT,
        });
    }
    Ok(run.report)
}

/// [`invariance_experiment`] without the tail acceptance check.
pub fn invariance_run(n: usize, m0: usize, a: f64, truncation: usize, r: f64) -> Result<InvarianceRun> {
    if m0 == 0 {
        return Err(domain("m0", "the base degree must be at least 1"));
    }
    if !(0.0..=MAX_DISPLACEMENT).contains(&a) {
        return Err(domain("a", format!("displacement {a} outside [0, {MAX_DISPLACEMENT}]")));
    }
    if truncation < m0 {
        return Err(domain(
            "M",
            format!("truncation {truncation} below the base degree {m0}"),
        ));
    }
    let f = SolidHarmonic::axial(n, m0)?;
    let before = coeff_circ(n, m0)? * dim_harmonics(n, m0) as f64;
    let mut centre = alloc::vec![0.0; n];
    centre[0] = a;
    let composed = |x: &[f64]| f.eval(&moebius_raw(&centre, x)).unwrap_or(f64::NAN);
    let spectrum = zonal_components(composed, n, r, truncation)?;
    let mut weighted = Vec::with_capacity(spectrum.len());
    for e in &spectrum {
        weighted.push(if e.m == 0 { 0.0 } else { coeff_circ(n, e.m)? * e.norm_sq });
    }
    if weighted.iter().any(|w| !w.is_finite()) {
        return Err(domain("a", "composed function left the ball"));
    }
    let after: f64 = weighted.iter().sum();
    let tail = tail_estimate(&weighted, after);
    let tail_fraction = if after > 0.0 { tail / after } else { 0.0 };
    Ok(InvarianceRun {
        report: InvarianceReport {
            n,
            base_degree: m0,
            displacement: a,
            truncation,
            extraction_radius: r,
            seminorm_sq_before: before,
            seminorm_sq_after: after,
            relative_difference: (after - before).abs() / before,
            tail_fraction,
        },
        weighted_spectrum: weighted,
    })
}

/// Geometric extrapolation of the modes beyond the last one, from the decay
/// ratio of the last two weighted components. Components near the roundoff
/// level of the total carry no decay information and count as their own tail.
fn tail_estimate(weighted: &[f64], total: f64) -> f64 {
    let noise = 1e-14 * total;
    match *weighted {
        [.., prev, last] => {
            if last <= noise {
                last
            } else if prev > last {
                let q = last / prev;
                last * q / (1.0 - q)
            } else {
                f64::INFINITY
            }
        }
        [last] => last,
        [] => 0.0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectral_seminorm() {
        assert_eq!(norm_circ_spectrum(&[], 3).unwrap(), 0.0);
        let constant = [SpectrumEntry {
            m: 0,
            norm_sq: 5.0,
            radius: 0.7,
        }];
        assert_eq!(norm_circ_spectrum(&constant, 3).unwrap(), 0.0);
        let single = [SpectrumEntry {
            m: 1,
            norm_sq: 3.0,
            radius: 0.7,
        }];
        assert!((norm_circ_spectrum(&single, 3).unwrap() - 12.0).abs() < 1e-13);
    }

    #[test]
    fn distinct_modes_are_orthogonal() {
        assert_eq!(inner_circ_zonal(3, &[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0]).unwrap(), 0.0);
        let v = inner_circ_zonal(4, &[0.0, 0.0, 2.0], &[0.0, 0.0, 1.5]).unwrap();
        assert!((v - coeff_circ(4, 2).unwrap() * 9.0 * 3.0).abs() < 1e-12);
    }

    #[test]
    fn identity_displacement() {
        let r = invariance_experiment(3, 2, 0.0, 20, 0.7).unwrap();
        assert!(r.relative_difference < 1e-12, "{r:?}");
    }

    #[test]
    fn small_displacement() {
        let r = invariance_experiment(3, 1, 0.3, 20, 0.7).unwrap();
        assert!(r.relative_difference < 1e-4, "{r:?}");
        assert!(r.tail_fraction < TAIL_FRACTION_LIMIT);
    }

    #[test]
    fn truncation_too_short_is_rejected() {
        assert!(matches!(
            invariance_experiment(3, 2, 0.45, 4, 0.7),
            Err(Error::Truncation { .. })
        ));
    }
}
