//! Gauss-Jacobi rules on `[0, 1]` and a zonal rule for the unit sphere.
//!
//! Nodes and weights come from the eigen-decomposition of the symmetric
//! tridiagonal Jacobi matrix (Golub-Welsch). Only the first component of each
//! eigenvector is needed, so the QL sweep tracks a single row.

use crate::math::{hypot, sqrt};
use crate::specfun::beta;
use crate::{domain, Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// Default order for radial integrals over `[0, 1]`.
pub const DEFAULT_RADIAL_ORDER: usize = 128;
/// Default order for zonal sphere integrals.
pub const DEFAULT_ZONAL_ORDER: usize = 96;
/// Largest order accepted by the constructors.
pub const MAX_ORDER: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum WeightFunction {
    /// `t^p (1-t)^q` on `[0, 1]`.
    Jacobi { p: f64, q: f64 },
    /// Normalized surface measure of the sphere in `R^n`, pushed forward to
    /// `u = <zeta, e_1>`: density proportional to `(1-u^2)^((n-3)/2)` on `[-1, 1]`.
    Zonal { n: usize },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Highest polynomial degree integrated exactly.
    pub degree: usize,
    pub weight: WeightFunction,
}

impl QuadratureRule {
    pub fn integrate<F: FnMut(f64) -> f64>(&self, mut f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// `N`-point Gauss rule for `int_0^1 f(t) t^p (1-t)^q dt`.
pub fn jacobi_rule(q: f64, p: f64, order: usize) -> Result<QuadratureRule> {
    if !(p > -1.0) {
        return Err(domain("p", format!("weight exponent {p} must exceed -1")));
    }
    if !(q > -1.0) {
        return Err(domain("q", format!("weight exponent {q} must exceed -1")));
    }
    if order == 0 || order > MAX_ORDER {
        return Err(domain("order", format!("{order} outside 1..={MAX_ORDER}")));
    }
    // Jacobi weight (1-x)^alpha (1+x)^beta on [-1, 1], with t = (1+x)/2
    let (alpha, beta_) = (q, p);
    let ab = alpha + beta_;
    let mut diag = Vec::with_capacity(order);
    let mut off = Vec::with_capacity(order);
    for k in 0..order {
        let kf = k as f64;
        let a = if k == 0 {
            (beta_ - alpha) / (ab + 2.0)
        } else {
            (beta_ * beta_ - alpha * alpha) / ((2.0 * kf + ab) * (2.0 * kf + ab + 2.0))
        };
        diag.push(a);
        let j = kf + 1.0;
        let b = if k == 0 {
            4.0 * (1.0 + alpha) * (1.0 + beta_) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab))
        } else {
            let s = 2.0 * j + ab;
            4.0 * j * (j + alpha) * (j + beta_) * (j + ab) / (s * s * (s + 1.0) * (s - 1.0))
        };
        off.push(if k + 1 < order { sqrt(b) } else { 0.0 });
    }
    let mut first_row = alloc::vec![0.0; order];
    first_row[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first_row)?;

    let mass = beta(p + 1.0, q + 1.0);
    let mut pairs: Vec<(f64, f64)> = diag
        .iter()
        .zip(&first_row)
        .map(|(&x, &v)| ((1.0 + x) / 2.0, mass * v * v))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(QuadratureRule {
        nodes: pairs.iter().map(|p| p.0).collect(),
        weights: pairs.iter().map(|p| p.1).collect(),
        degree: 2 * order - 1,
        weight: WeightFunction::Jacobi { p, q },
    })
}

/// Gauss rule in `u = <zeta, e_1>` for the normalized surface measure on the
/// sphere of `R^n`, valid for integrands depending on `zeta` through `u` only.
pub fn zonal_sphere_rule(n: usize, order: usize) -> Result<QuadratureRule> {
    if n < 3 {
        return Err(domain("n", format!("dimension {n} < 3")));
    }
    let e = (n as f64 - 3.0) / 2.0;
    let base = jacobi_rule(e, e, order)?;
    let mass = base.mass();
    Ok(QuadratureRule {
        nodes: base.nodes.iter().map(|t| 2.0 * t - 1.0).collect(),
        weights: base.weights.iter().map(|w| w / mass).collect(),
        degree: base.degree,
        weight: WeightFunction::Zonal { n },
    })
}

/// Implicit QL with Wilkinson-type shifts on a symmetric tridiagonal matrix.
///
/// `diag` is overwritten by the eigenvalues, `off[i]` couples `i` and `i+1`
/// (the last entry is ignored), and `row` receives the first row of the
/// eigenvector matrix.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64], row: &mut [f64]) -> Result<()> {
    let n = diag.len();
    if n == 1 {
        return Ok(());
    }
    off[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence("tridiagonal QL iteration"));
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = hypot(g, 1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * off[i];
                let b = c * off[i];
                r = hypot(f, g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
                let z = row[i + 1];
                row[i + 1] = s * row[i] + c * z;
                row[i] = c * row[i] - s * z;
            }
            if deflated {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
    Ok(())
}
