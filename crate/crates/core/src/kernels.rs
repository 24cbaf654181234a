//! The profile `f_n`, the reproducing kernel of the Dirichlet space in closed
//! and series form, and the weighted Bergman kernels as truncated series.

use crate::ballgeom::{moebius_raw, norm_sq, BallPoint};
use crate::coefficients::{coeff_circ, coeff_quadrature_with_order};
use crate::harmonics::{dim_harmonics, radial_profile, zonal};
use crate::math::{exp, ln, powi};
use crate::quadrature::{jacobi_rule, DEFAULT_RADIAL_ORDER};
use crate::specfun::{hyp2f1, hyp_pfq, ln_gamma_ratio};
use crate::{domain, Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// Largest `|x||y|` accepted by the series kernels.
pub const MAX_SERIES_PRODUCT: f64 = 0.85;
/// Hard cap on the adaptive truncation.
pub const MAX_TRUNCATION: usize = 400;
/// Default tail tolerance of the adaptive series.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-9;

/// Which kernel a value belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum KernelWeight {
    /// The Dirichlet kernel.
    Circ,
    /// The weighted Bergman kernel `K_s`.
    Bergman(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum KernelMethod {
    Closed,
    Series,
}

impl KernelMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelMethod::Closed => "closed",
            KernelMethod::Series => "series",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct KernelEvaluation {
    pub n: usize,
    pub weight: KernelWeight,
    pub x: BallPoint,
    pub y: BallPoint,
    pub value: f64,
    pub method: KernelMethod,
    pub truncation: Option<usize>,
    pub tail: Option<f64>,
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 3 {
        Err(domain("n", format!("dimension {n} < 3")))
    } else {
        Ok(())
    }
}

fn check_pair(n: usize, x: &BallPoint, y: &BallPoint) -> Result<()> {
    check_dimension(n)?;
    for p in [x, y] {
        if p.dim() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: p.dim(),
            });
        }
    }
    Ok(())
}

/// `f_n(x) = int_0^x (1-t)^(n-2) 2F1(n, n/2; 1+n/2; t) dt`, in the closed form
///
/// `f_n(x) = (n-2)/(2(n-1)) x 3F2(2-n/2, 1, 1; 2, 1+n/2; x) + n/(2(n-1)) log(1/(1-x))`.
pub fn f_profile(n: usize, x: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(0.0..1.0).contains(&x) {
        return Err(domain("x", format!("f_n diverges logarithmically at x = {x} >= 1")));
    }
    let nf = n as f64;
    let series = hyp_pfq(&[2.0 - nf / 2.0, 1.0, 1.0], &[2.0, 1.0 + nf / 2.0], x, false)?;
    Ok((nf - 2.0) / (2.0 * (nf - 1.0)) * x * series - nf / (2.0 * (nf - 1.0)) * ln(1.0 - x))
}

/// `f_n'(t) = (1-t)^(n-2) 2F1(n, n/2; 1+n/2; t)`.
pub fn f_profile_derivative(n: usize, t: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(0.0..1.0).contains(&t) {
        return Err(domain("t", format!("t = {t} outside [0, 1)")));
    }
    let nf = n as f64;
    Ok(powi(1.0 - t, n as i32 - 2) * hyp2f1(nf, nf / 2.0, 1.0 + nf / 2.0, t, false)?)
}

/// `f_n(x)` from its defining integral by Gauss-Legendre quadrature on `[0, x]`.
pub fn f_profile_integral(n: usize, x: f64, order: usize) -> Result<f64> {
    check_dimension(n)?;
    if !(0.0..1.0).contains(&x) {
        return Err(domain("x", format!("x = {x} outside [0, 1)")));
    }
    let rule = jacobi_rule(0.0, 0.0, order)?;
    let mut acc = 0.0;
    for (&u, &w) in rule.nodes.iter().zip(&rule.weights) {
        acc += w * f_profile_derivative(n, x * u)?;
    }
    Ok(x * acc)
}

/// The constant `c` with `K(x, x) = c f_n(|x|^2)` for the Dirichlet kernel
/// built from the weights of [`coeff_circ`]: `4(n-1)/n` for even `n` and
/// `2(n-1)/n` for odd `n`, where those weights carry an extra factor two.
pub fn dirichlet_constant(n: usize) -> f64 {
    let nf = n as f64;
    if n % 2 == 0 {
        4.0 * (nf - 1.0) / nf
    } else {
        2.0 * (nf - 1.0) / nf
    }
}

/// `K(x, y) = c/2 [f_n(|x|^2) + f_n(|y|^2) - f_n(|phi_y(x)|^2)]` on raw coordinates.
pub(crate) fn dirichlet_kernel_raw(n: usize, x: &[f64], y: &[f64]) -> Result<f64> {
    if x.iter().all(|&c| c == 0.0) || y.iter().all(|&c| c == 0.0) {
        return Ok(0.0);
    }
    let phi = moebius_raw(y, x);
    let t = norm_sq(&phi).min(1.0 - f64::EPSILON);
    let bracket = f_profile(n, norm_sq(x))? + f_profile(n, norm_sq(y))? - f_profile(n, t)?;
    Ok(dirichlet_constant(n) / 2.0 * bracket)
}

/// The Dirichlet kernel in closed form.
pub fn dirichlet_kernel(n: usize, x: &BallPoint, y: &BallPoint) -> Result<KernelEvaluation> {
    check_pair(n, x, y)?;
    let value = dirichlet_kernel_raw(n, x.coords(), y.coords())?;
    Ok(KernelEvaluation {
        n,
        weight: KernelWeight::Circ,
        x: x.clone(),
        y: y.clone(),
        value,
        method: KernelMethod::Closed,
        truncation: None,
        tail: None,
    })
}

/// `(n-1)_m / (n/2)_m = S_m(0)`, the largest value of `S_m` on `[0, 1]`.
fn profile_bound(n: usize, m: usize) -> f64 {
    let nf = n as f64;
    let mf = m as f64;
    let (lg, _) = ln_gamma_ratio(&[nf - 1.0 + mf, nf / 2.0], &[nf - 1.0, nf / 2.0 + mf]);
    exp(lg)
}

/// Bound on the modes `m > truncation` of a kernel series with weights
/// `weight(m)`: `sum S_m(0)^2 dim H_m rho^m / weight(m)`, `rho = |x||y|`.
fn tail_bound<W>(n: usize, rho: f64, truncation: usize, mut weight: W) -> Result<f64>
where
    W: FnMut(usize) -> Result<f64>,
{
    if rho == 0.0 {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    let mut m = truncation + 1;
    loop {
        let p = profile_bound(n, m);
        let term = p * p * dim_harmonics(n, m) as f64 * powi(rho, m as i32) / weight(m)?;
        acc += term;
        if term <= 1e-17 * acc || m > truncation + 4000 {
            return Ok(acc);
        }
        m += 1;
    }
}

fn check_series_pair(n: usize, x: &BallPoint, y: &BallPoint) -> Result<f64> {
    check_pair(n, x, y)?;
    let rho = x.norm() * y.norm();
    if rho > MAX_SERIES_PRODUCT {
        return Err(domain(
            "x, y",
            format!("|x||y| = {rho} exceeds {MAX_SERIES_PRODUCT}; the series converges too slowly"),
        ));
    }
    Ok(rho)
}

fn series_sum<W>(n: usize, x: &[f64], y: &[f64], first: usize, truncation: usize, mut weight: W) -> Result<f64>
where
    W: FnMut(usize) -> Result<f64>,
{
    let tx = norm_sq(x);
    let ty = norm_sq(y);
    let mut acc = 0.0;
    for m in first..=truncation {
        let z = zonal(n, m, x, y);
        if z == 0.0 {
            continue;
        }
        acc += radial_profile(n, m, tx)? * radial_profile(n, m, ty)? * z / weight(m)?;
    }
    Ok(acc)
}

/// Smallest truncation whose tail bound is below `tolerance`.
fn adaptive_truncation<W>(n: usize, rho: f64, tolerance: f64, mut weight: W) -> Result<(usize, f64)>
where
    W: FnMut(usize) -> Result<f64>,
{
    let mut truncation = 1;
    loop {
        let tail = tail_bound(n, rho, truncation, &mut weight)?;
        if tail < tolerance {
            return Ok((truncation, tail));
        }
        if truncation >= MAX_TRUNCATION {
            return Err(Error::Truncation {
                truncation,
                tail,
                tolerance,
            });
        }
        truncation = (truncation + truncation / 4 + 1).min(MAX_TRUNCATION);
    }
}

/// `sum_{m=1}^{M} S_m(|x|^2) S_m(|y|^2) Z_m(x, y) / I_m^circ`.
pub fn dirichlet_kernel_series(n: usize, x: &BallPoint, y: &BallPoint, truncation: usize) -> Result<KernelEvaluation> {
    let rho = check_series_pair(n, x, y)?;
    let value = series_sum(n, x.coords(), y.coords(), 1, truncation, |m| coeff_circ(n, m))?;
    let tail = tail_bound(n, rho, truncation, |m| coeff_circ(n, m))?;
    Ok(KernelEvaluation {
        n,
        weight: KernelWeight::Circ,
        x: x.clone(),
        y: y.clone(),
        value,
        method: KernelMethod::Series,
        truncation: Some(truncation),
        tail: Some(tail),
    })
}

/// [`dirichlet_kernel_series`] with the truncation grown until the tail bound
/// drops below `tolerance`, up to [`MAX_TRUNCATION`].
pub fn dirichlet_kernel_adaptive(n: usize, x: &BallPoint, y: &BallPoint, tolerance: f64) -> Result<KernelEvaluation> {
    let rho = check_series_pair(n, x, y)?;
    let (truncation, _) = adaptive_truncation(n, rho, tolerance, |m| coeff_circ(n, m))?;
    dirichlet_kernel_series(n, x, y, truncation)
}

/// Memo of `I_m(s)` for one `(n, s)`, filled on demand by quadrature.
#[derive(Debug, Clone, PartialEq)]
pub struct BergmanCoefficients {
    n: usize,
    s: f64,
    order: usize,
    values: Vec<f64>,
}

impl BergmanCoefficients {
    pub fn new(n: usize, s: f64) -> Result<Self> {
        Self::with_order(n, s, DEFAULT_RADIAL_ORDER)
    }

    pub fn with_order(n: usize, s: f64, order: usize) -> Result<Self> {
        check_dimension(n)?;
        if !(s > -1.0) {
            return Err(domain("s", format!("Bergman kernels need s > -1, got {s}")));
        }
        Ok(Self {
            n,
            s,
            order,
            values: alloc::vec![1.0],
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Makes `I_0(s), ..., I_M(s)` available.
    pub fn ensure(&mut self, max_mode: usize) -> Result<()> {
        while self.values.len() <= max_mode {
            let m = self.values.len();
            let v = coeff_quadrature_with_order(self.n, m, self.s, self.order)?;
            self.values.push(v.value().unwrap_or(f64::NAN));
        }
        Ok(())
    }

    /// `I_m(s)` if already computed.
    pub fn get(&self, m: usize) -> Option<f64> {
        self.values.get(m).copied()
    }

    /// Computed values, index `m`.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// `I_m(s)`, computing it when missing.
    pub fn value(&mut self, m: usize) -> Result<f64> {
        self.ensure(m)?;
        Ok(self.values[m])
    }
}

/// `sum_{m=0}^{M} S_m(|x|^2) S_m(|y|^2) Z_m(x, y) / I_m(s)` with the
/// coefficients taken from (and added to) `cache`.
pub fn bergman_kernel_series(
    cache: &mut BergmanCoefficients,
    x: &BallPoint,
    y: &BallPoint,
    truncation: usize,
) -> Result<KernelEvaluation> {
    let n = cache.dim();
    let rho = check_series_pair(n, x, y)?;
    cache.ensure(truncation)?;
    let value = series_sum(n, x.coords(), y.coords(), 0, truncation, |m| cache.value(m))?;
    let tail = tail_bound(n, rho, truncation, |m| cache.value(m))?;
    Ok(KernelEvaluation {
        n,
        weight: KernelWeight::Bergman(cache.s()),
        x: x.clone(),
        y: y.clone(),
        value,
        method: KernelMethod::Series,
        truncation: Some(truncation),
        tail: Some(tail),
    })
}

/// [`bergman_kernel_series`] with adaptive truncation.
pub fn bergman_kernel_adaptive(
    cache: &mut BergmanCoefficients,
    x: &BallPoint,
    y: &BallPoint,
    tolerance: f64,
) -> Result<KernelEvaluation> {
    let n = cache.dim();
    let rho = check_series_pair(n, x, y)?;
    let (truncation, _) = adaptive_truncation(n, rho, tolerance, |m| cache.value(m))?;
    bergman_kernel_series(cache, x, y, truncation)
}

/// `|K(x,y) - [K(phi_a x, phi_a y) - K(phi_a x, a) - K(a, phi_a y) + K(a, a)]|`
/// for the closed-form Dirichlet kernel.
pub fn transform_check(n: usize, x: &BallPoint, y: &BallPoint, a: &BallPoint) -> Result<f64> {
    check_pair(n, x, y)?;
    check_pair(n, a, a)?;
    let (x, y, a) = (x.coords(), y.coords(), a.coords());
    let ax = moebius_raw(a, x);
    let ay = moebius_raw(a, y);
    let k = |p: &[f64], q: &[f64]| dirichlet_kernel_raw(n, p, q);
    let lhs = k(x, y)?;
    let rhs = k(&ax, &ay)? - k(&ax, a)? - k(a, &ay)? + k(a, a)?;
    Ok((lhs - rhs).abs())
}
