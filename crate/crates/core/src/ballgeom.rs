//! Points of the unit ball, Moebius maps, the hyperbolic Laplacian and the
//! invariant mean-value property.

use crate::math::{cos, sin, sqrt, PI};
use crate::quadrature::{zonal_sphere_rule, DEFAULT_ZONAL_ORDER};
use crate::{domain, Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// Default finite-difference step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// A point of the open unit ball in `R^n`, `n >= 3`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct BallPoint {
    coords: Vec<f64>,
}

impl BallPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 3 {
            return Err(domain("n", format!("dimension {} < 3", coords.len())));
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(domain("x", "non-finite coordinate"));
        }
        let norm_sq: f64 = coords.iter().map(|c| c * c).sum();
        if norm_sq >= 1.0 {
            return Err(domain(
                "x",
                format!("|x| = {} is not inside the unit ball", sqrt(norm_sq)),
            ));
        }
        Ok(Self { coords })
    }

    pub fn origin(n: usize) -> Result<Self> {
        Self::new(alloc::vec![0.0; n])
    }

    /// The point `r e_1`.
    pub fn on_axis(n: usize, r: f64) -> Result<Self> {
        let mut v = alloc::vec![0.0; n];
        if n > 0 {
            v[0] = r;
        }
        Self::new(v)
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn norm_sq(&self) -> f64 {
        norm_sq(&self.coords)
    }

    pub fn norm(&self) -> f64 {
        sqrt(self.norm_sq())
    }

    pub fn dot(&self, other: &Self) -> Result<f64> {
        same_dim(self, other)?;
        Ok(dot(&self.coords, &other.coords))
    }
}

fn same_dim(x: &BallPoint, y: &BallPoint) -> Result<()> {
    if x.dim() == y.dim() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            left: x.dim(),
            right: y.dim(),
        })
    }
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm_sq(x: &[f64]) -> f64 {
    dot(x, x)
}

/// `[x, a]^2 = 1 - 2<x,a> + |x|^2 |a|^2` on raw coordinates.
pub(crate) fn bracket_sq_raw(x: &[f64], a: &[f64]) -> f64 {
    1.0 - 2.0 * dot(x, a) + norm_sq(x) * norm_sq(a)
}

/// `[x, a] = sqrt(1 - 2<x,a> + |x|^2 |a|^2)`.
pub fn bracket(x: &BallPoint, a: &BallPoint) -> Result<f64> {
    same_dim(x, a)?;
    Ok(sqrt(bracket_sq_raw(&x.coords, &a.coords)))
}

/// `phi_a(x)` on raw coordinates; requires `|a| < 1` and `x` off the point `a*`.
pub(crate) fn moebius_raw(a: &[f64], x: &[f64]) -> Vec<f64> {
    let a2 = norm_sq(a);
    let xa2: f64 = x.iter().zip(a).map(|(xi, ai)| (xi - ai) * (xi - ai)).sum();
    let den = bracket_sq_raw(x, a);
    a.iter()
        .zip(x)
        .map(|(&ai, &xi)| (ai * xa2 + (1.0 - a2) * (ai - xi)) / den)
        .collect()
}

/// The involution `phi_a` of the ball exchanging `0` and `a`:
/// `phi_a(x) = (a |x-a|^2 + (1-|a|^2)(a-x)) / [x,a]^2`.
pub fn moebius(a: &BallPoint, x: &BallPoint) -> Result<BallPoint> {
    same_dim(a, x)?;
    let coords = moebius_raw(&a.coords, &x.coords);
    // |phi_a(x)| < 1 holds exactly; clamp roundoff right at the boundary
    let r2 = norm_sq(&coords);
    if r2 >= 1.0 {
        let s = (1.0 - f64::EPSILON) / sqrt(r2);
        return BallPoint::new(coords.into_iter().map(|c| c * s).collect());
    }
    Ok(BallPoint { coords })
}

/// Central-difference estimate of
/// `Delta_h f(x) = (1-|x|^2) [(1-|x|^2) Delta f(x) + 2(n-2) <x, grad f(x)>]`.
pub fn laplacian_h_fd<F>(f: F, x: &BallPoint, h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let n = x.dim();
    let reach = x.norm() + h * sqrt(n as f64);
    if !(h > 0.0) || reach >= 1.0 {
        return Err(Error::StencilOutsideBall { reach });
    }
    let mut p = x.coords.clone();
    let centre = f(&p);
    let mut lap = 0.0;
    let mut radial = 0.0;
    for i in 0..n {
        let xi = p[i];
        p[i] = xi + h;
        let fp = f(&p);
        p[i] = xi - h;
        let fm = f(&p);
        p[i] = xi;
        lap += (fp - 2.0 * centre + fm) / (h * h);
        radial += xi * (fp - fm) / (2.0 * h);
    }
    let w = 1.0 - x.norm_sq();
    Ok(w * (w * lap + 2.0 * (n as f64 - 2.0) * radial))
}

/// [`laplacian_h_fd`] with one Richardson step over `(h, h/2)`, which cancels
/// the `O(h^2)` error term.
pub fn laplacian_h_fd_richardson<F>(f: F, x: &BallPoint, h: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let coarse = laplacian_h_fd(&f, x, h)?;
    let fine = laplacian_h_fd(&f, x, h / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// How the sphere average in [`mean_value_residual_with`] is computed.
#[derive(Debug, Clone, PartialEq)]
pub enum SphereCubature {
    /// One-dimensional rule in `u = <zeta, axis>`; exact only when the
    /// integrand is invariant under rotations fixing `axis`.
    Zonal { axis: Vec<f64>, order: usize },
    /// Gauss rule in `cos(theta)` times the trapezoid rule in the azimuth,
    /// for general integrands on the sphere of `R^3`.
    Product3 { order: usize },
}

/// `int f(phi_a(r zeta)) d sigma(zeta) - f(a)`, which vanishes for H-harmonic `f`.
///
/// Uses the product rule in dimension three and otherwise the zonal rule about
/// `a` (about `e_1` when `a = 0`), which presumes the matching symmetry of `f`.
pub fn mean_value_residual<F>(f: F, a: &BallPoint, r: f64) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    let cubature = if a.dim() == 3 {
        SphereCubature::Product3 { order: 64 }
    } else {
        let norm = a.norm();
        let axis = if norm > 0.0 {
            a.coords.iter().map(|c| c / norm).collect()
        } else {
            let mut e1 = alloc::vec![0.0; a.dim()];
            e1[0] = 1.0;
            e1
        };
        SphereCubature::Zonal {
            axis,
            order: DEFAULT_ZONAL_ORDER,
        }
    };
    mean_value_residual_with(f, a, r, &cubature)
}

pub fn mean_value_residual_with<F>(f: F, a: &BallPoint, r: f64, cubature: &SphereCubature) -> Result<f64>
where
    F: Fn(&[f64]) -> f64,
{
    if !(r > 0.0 && r < 1.0) {
        return Err(domain("r", format!("radius {r} outside (0, 1)")));
    }
    let n = a.dim();
    let at = |zeta: &[f64]| {
        let x: Vec<f64> = zeta.iter().map(|z| r * z).collect();
        f(&moebius_raw(&a.coords, &x))
    };
    let mean = match cubature {
        SphereCubature::Zonal { axis, order } => {
            if axis.len() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: axis.len(),
                });
            }
            let perp = perpendicular(axis);
            let rule = zonal_sphere_rule(n, *order)?;
            rule.integrate(|u| {
                let v = sqrt((1.0 - u * u).max(0.0));
                let zeta: Vec<f64> = axis.iter().zip(&perp).map(|(e, p)| u * e + v * p).collect();
                at(&zeta)
            })
        }
        SphereCubature::Product3 { order } => {
            if n != 3 {
                return Err(domain("n", format!("product sphere rule needs n = 3, got {n}")));
            }
            let rule = zonal_sphere_rule(3, *order)?;
            let azimuths = 2 * order;
            rule.integrate(|u| {
                let v = sqrt((1.0 - u * u).max(0.0));
                let mut acc = 0.0;
                for j in 0..azimuths {
                    let phi = 2.0 * PI * j as f64 / azimuths as f64;
                    acc += at(&[u, v * cos(phi), v * sin(phi)]);
                }
                acc / azimuths as f64
            })
        }
    };
    Ok(mean - f(&a.coords))
}

/// A unit vector orthogonal to the unit vector `axis`.
fn perpendicular(axis: &[f64]) -> Vec<f64> {
    let n = axis.len();
    // Gram-Schmidt against the coordinate vector least aligned with axis
    let j = (0..n)
        .min_by(|&i, &k| axis[i].abs().total_cmp(&axis[k].abs()))
        .unwrap_or(0);
    let mut v: Vec<f64> = axis.iter().map(|e| -axis[j] * e).collect();
    v[j] += 1.0;
    let norm = sqrt(norm_sq(&v));
    v.iter().map(|c| c / norm).collect()
}
