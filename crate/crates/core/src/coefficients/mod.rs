//! The coefficient integrals of the weighted H-harmonic Bergman norms,
//!
//! `I_m(s) = Gamma(n/2+s+1) / (Gamma(n/2) Gamma(s+1)) * int_0^1 t^(m+n/2-1) (1-t)^s S_m(t)^2 dt`,
//!
//! their meromorphic continuation to all real `s`, the residues at the pole
//! lattice, the generalized integrals `I_{m,k}(s)` and their large-`m`
//! asymptotics.

mod asymptotic;
mod continued;
mod mk;
mod weights;

pub use asymptotic::leading_constant;
pub use continued::{continued_parts, ContinuedParts};
pub use mk::{coeff_mk, coeff_mk_series, coeff_mk_with_order};
pub use weights::{diff_weights, DiffWeights};

use crate::harmonics::radial_profile;
use crate::math::{exp, floor};
use crate::quadrature::{jacobi_rule, DEFAULT_RADIAL_ORDER};
use crate::specfun::ln_gamma_ratio;
use crate::{domain, Error, Result};
use alloc::format;

/// Offsets used for the Laurent estimates at a pole.
pub const LAURENT_STEPS: [f64; 2] = [1e-4, 5e-5];
/// Relative size below which Laurent coefficients count as absent.
const REMOVABLE_TOLERANCE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Method {
    Quadrature,
    Continuation,
    ClosedMoment,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Continuation => "continuation",
            Method::ClosedMoment => "closed_moment",
        }
    }
}

/// A finite coefficient or a pole of its continuation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Coefficient {
    Finite(f64),
    Pole { location: f64 },
}

/// `I_m(s)` or `I_{m,k}(s)` together with how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CoefficientValue {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub s: f64,
    pub value: Coefficient,
    pub method: Method,
    /// Estimated residue, present for pole markers.
    pub residue: Option<f64>,
}

impl CoefficientValue {
    fn finite(n: usize, m: usize, k: usize, s: f64, value: f64, method: Method) -> Self {
        Self {
            n,
            m,
            k,
            s,
            value: Coefficient::Finite(value),
            method,
            residue: None,
        }
    }

    /// The value, or `None` at a pole.
    pub fn value(&self) -> Option<f64> {
        match self.value {
            Coefficient::Finite(v) => Some(v),
            Coefficient::Pole { .. } => None,
        }
    }

    pub fn is_pole(&self) -> bool {
        matches!(self.value, Coefficient::Pole { .. })
    }
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 3 {
        Err(domain("n", format!("dimension {n} < 3")))
    } else {
        Ok(())
    }
}

/// True when `s` lies on the lattice `{-n-j} u {-1-n/2-j} u {1-2n-j}`, `j >= 0`,
/// the only places where the continued coefficients can have poles.
pub fn is_pole_location(n: usize, s: f64) -> bool {
    let nf = n as f64;
    let integer = s == floor(s);
    let half_shift = s + 1.0 + nf / 2.0;
    (integer && s <= -nf) || (s <= -1.0 - nf / 2.0 && half_shift == floor(half_shift))
}

/// Distance from `s` to the nearest point of the pole lattice.
pub fn pole_distance(n: usize, s: f64) -> f64 {
    let nf = n as f64;
    let mut best = f64::INFINITY;
    // integers <= -n (this also covers 1 - 2n - j)
    let near_int = floor(s + 0.5).min(-nf);
    best = best.min((s - near_int).abs());
    let base = -1.0 - nf / 2.0;
    let near_half = base - floor(base - s + 0.5).max(0.0);
    best = best.min((s - near_half).abs());
    best
}

/// Prefactor `Gamma(n/2+s+1) / (Gamma(n/2) Gamma(s+1))` of the Bergman measure.
fn measure_constant(n: usize, s: f64) -> f64 {
    let nf = n as f64;
    let (lg, sign) = ln_gamma_ratio(&[nf / 2.0 + s + 1.0], &[nf / 2.0, s + 1.0]);
    sign * exp(lg)
}

/// `I_m(s)` by Gauss-Jacobi quadrature, `s > -1`.
pub fn coeff_quadrature(n: usize, m: usize, s: f64) -> Result<CoefficientValue> {
    coeff_quadrature_with_order(n, m, s, DEFAULT_RADIAL_ORDER)
}

pub fn coeff_quadrature_with_order(n: usize, m: usize, s: f64, order: usize) -> Result<CoefficientValue> {
    check_dimension(n)?;
    if !(s > -1.0) {
        return Err(domain("s", format!("quadrature needs s > -1, got {s}")));
    }
    let nf = n as f64;
    let rule = jacobi_rule(s, m as f64 + nf / 2.0 - 1.0, order)?;
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let p = radial_profile(n, m, t)?;
        acc += w * p * p;
    }
    Ok(CoefficientValue::finite(
        n,
        m,
        0,
        s,
        measure_constant(n, s) * acc,
        Method::Quadrature,
    ))
}

/// `int_0^1 t^(m+n/2-1) (1-t)^(s+alpha) S_m(t) dt` in closed form.
pub fn coeff_linear_moment(n: usize, m: usize, s: f64, alpha: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(alpha >= 0.0) || !(s + alpha > -1.0) {
        return Err(domain(
            "alpha",
            format!("need alpha >= 0 and s + alpha > -1, got s = {s}, alpha = {alpha}"),
        ));
    }
    let nf = n as f64;
    let mf = m as f64;
    let sa = s + alpha;
    let (lg, sign) = ln_gamma_ratio(
        &[nf - 1.0 + mf, sa + 1.0, nf + sa, nf / 2.0],
        &[nf - 1.0, mf + nf + sa, nf / 2.0 + sa + 1.0],
    );
    Ok(sign * exp(lg))
}

/// The residue of `I_m` at `s = -n`: `(n-1)_m / Gamma(m)`, doubled for odd `n`.
pub fn coeff_circ(n: usize, m: usize) -> Result<f64> {
    check_dimension(n)?;
    if m == 0 {
        return Err(domain("m", "the Dirichlet weight is defined for m >= 1 only"));
    }
    let nf = n as f64;
    let mf = m as f64;
    let (lg, _) = ln_gamma_ratio(&[nf - 1.0 + mf], &[nf - 1.0, mf]);
    let base = exp(lg);
    Ok(if n % 2 == 1 { 2.0 * base } else { base })
}

/// Leading Laurent data of the continued `I_m` around a point `s0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentEstimate {
    /// Coefficient of `(s - s0)^-2`.
    pub c_minus_2: f64,
    /// Coefficient of `(s - s0)^-1`, the residue.
    pub c_minus_1: f64,
    /// The regular part at `s0` (the value when the point is removable).
    pub c_0: f64,
}

impl LaurentEstimate {
    pub fn is_removable(&self) -> bool {
        let scale = self.c_0.abs().max(f64::MIN_POSITIVE);
        self.c_minus_1.abs().max(self.c_minus_2.abs()) <= REMOVABLE_TOLERANCE * scale
    }
}

/// Laurent coefficients at `s0` from symmetric samples `s0 +- delta`,
/// Richardson-combined over the two steps in [`LAURENT_STEPS`].
pub fn laurent(n: usize, m: usize, s0: f64) -> Result<LaurentEstimate> {
    let mut samples = [(0.0, 0.0, 0.0); 2];
    for (slot, &d) in samples.iter_mut().zip(&LAURENT_STEPS) {
        let plus = continued_parts(n, m, s0 + d)?.total();
        let minus = continued_parts(n, m, s0 - d)?.total();
        let even = (plus + minus) / 2.0;
        let odd = (plus - minus) / 2.0;
        *slot = (d * d * even, d * odd, even);
    }
    // both steps differ by a factor two, so the O(delta^2) terms cancel with weights (4, -1)/3
    let combine = |a: f64, b: f64| (4.0 * b - a) / 3.0;
    Ok(LaurentEstimate {
        c_minus_2: combine(samples[0].0, samples[1].0),
        c_minus_1: combine(samples[0].1, samples[1].1),
        c_0: combine(samples[0].2, samples[1].2),
    })
}

/// `I_m(s)` for any real `s` through the continuation `A(s) + B(s)`.
///
/// On the pole lattice the result is a pole marker carrying the estimated
/// residue, or the finite limit when the singularity is removable.
pub fn coeff_continued(n: usize, m: usize, s: f64) -> Result<CoefficientValue> {
    check_dimension(n)?;
    if !s.is_finite() {
        return Err(domain("s", "non-finite"));
    }
    if m == 0 {
        return Ok(CoefficientValue::finite(n, 0, 0, s, 1.0, Method::Continuation));
    }
    if is_pole_location(n, s) {
        let est = laurent(n, m, s)?;
        if est.is_removable() {
            return Ok(CoefficientValue::finite(n, m, 0, s, est.c_0, Method::Continuation));
        }
        return Ok(CoefficientValue {
            n,
            m,
            k: 0,
            s,
            value: Coefficient::Pole { location: s },
            method: Method::Continuation,
            residue: Some(est.c_minus_1),
        });
    }
    let v = continued_parts(n, m, s)?.total();
    Ok(CoefficientValue::finite(n, m, 0, s, v, Method::Continuation))
}

/// Residue of the continued `I_m` at a pole `s0`.
pub fn coeff_residue(n: usize, m: usize, s0: f64) -> Result<f64> {
    check_dimension(n)?;
    if m == 0 {
        return Err(Error::NotAPole { s: s0, estimate: 0.0 });
    }
    if !is_pole_location(n, s0) {
        let d = LAURENT_STEPS[0];
        let plus = continued_parts(n, m, s0 + d)?.total();
        let minus = continued_parts(n, m, s0 - d)?.total();
        return Err(Error::NotAPole {
            s: s0,
            estimate: d * (plus - minus) / 2.0,
        });
    }
    let est = laurent(n, m, s0)?;
    if est.is_removable() {
        return Err(Error::NotAPole {
            s: s0,
            estimate: est.c_minus_1,
        });
    }
    Ok(est.c_minus_1)
}
