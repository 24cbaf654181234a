//! Zonal harmonics, the radial profiles `S_m` of solid H-harmonic functions,
//! and the projection of zonal functions onto spherical harmonic modes.

use crate::ballgeom::{dot, norm_sq};
use crate::coefficients::diff_weights;
use crate::math::{exp, powf, sqrt};
use crate::quadrature::{zonal_sphere_rule, DEFAULT_ZONAL_ORDER};
use crate::specfun::{gegenbauer, hyp2f1, ln_gamma_ratio};
use crate::{domain, Error, Result};
use alloc::format;
use alloc::vec::Vec;

/// Smallest `r^m S_m(r^2)` accepted as a divisor when extracting components.
pub const UNDERFLOW_THRESHOLD: f64 = 1e-12;
/// Default extraction radius.
pub const DEFAULT_RADIUS: f64 = 0.7;
/// Default highest mode.
pub const DEFAULT_MAX_MODE: usize = 20;

/// Dimension of the space `H_m` of degree-`m` spherical harmonics on `S^(n-1)`.
pub fn dim_harmonics(n: usize, m: usize) -> u64 {
    // C(m+n-1, n-1) - C(m+n-3, n-1)
    let top = binomial((m + n - 1) as u128, (n - 1) as u128);
    let low = if m >= 2 {
        binomial((m + n - 3) as u128, (n - 1) as u128)
    } else {
        0
    };
    (top - low) as u64
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `Z_m(x, y) = |x|^m |y|^m (m+lambda)/lambda C_m^lambda(<x,y>/(|x||y|))`,
/// `lambda = (n-2)/2`, the reproducing kernel of `H_m` extended by homogeneity.
pub fn zonal(n: usize, m: usize, x: &[f64], y: &[f64]) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let rx = sqrt(norm_sq(x));
    let ry = sqrt(norm_sq(y));
    if rx == 0.0 || ry == 0.0 {
        return 0.0;
    }
    let u = (dot(x, y) / (rx * ry)).clamp(-1.0, 1.0);
    powf(rx * ry, m as f64) * zonal_unit(n, m, u)
}

/// `Z_m(zeta, eta)` for unit vectors with `<zeta, eta> = u`.
pub fn zonal_unit(n: usize, m: usize, u: f64) -> f64 {
    if m == 0 {
        return 1.0;
    }
    let lambda = (n as f64 - 2.0) / 2.0;
    (m as f64 + lambda) / lambda * gegenbauer(lambda, m, u)
}

/// `(n-1)_m / (n/2)_m`, the normalization making `S_m(1) = 1`.
fn profile_prefactor(n: usize, m: usize) -> f64 {
    let nf = n as f64;
    let mf = m as f64;
    let (lg, _) = ln_gamma_ratio(&[nf - 1.0 + mf, nf / 2.0], &[nf - 1.0, nf / 2.0 + mf]);
    exp(lg)
}

/// `S_m(t) = (n-1)_m/(n/2)_m 2F1(m, 1-n/2; m+n/2; t)`.
pub fn radial_profile(n: usize, m: usize, t: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(0.0..=1.0).contains(&t) {
        return Err(domain("t", format!("t = {t} outside [0, 1]")));
    }
    if m == 0 {
        return Ok(1.0);
    }
    let nf = n as f64;
    let mf = m as f64;
    Ok(profile_prefactor(n, m) * hyp2f1(mf, 1.0 - nf / 2.0, mf + nf / 2.0, t, false)?)
}

/// `(2t d/dt)^k [t^(m/2) S_m(t)]`, for `0 <= k <= n-2`.
pub fn radial_derivative(n: usize, m: usize, k: usize, t: f64) -> Result<f64> {
    check_dimension(n)?;
    if k > n - 2 {
        return Err(domain("k", format!("k = {k} exceeds n - 2 = {}", n - 2)));
    }
    if !(t > 0.0 && t <= 1.0) {
        return Err(domain("t", format!("t = {t} outside (0, 1]")));
    }
    let nf = n as f64;
    let mf = m as f64;
    let weights = diff_weights(m, k);
    let pre = profile_prefactor(n, m) * powf(t, mf / 2.0);
    let mut acc = 0.0;
    for (j, &c) in weights.weights.iter().enumerate() {
        if c == 0.0 {
            continue;
        }
        acc += c * hyp2f1(mf + j as f64, 1.0 - nf / 2.0, mf + nf / 2.0, t, false)?;
    }
    Ok(pre * acc)
}

fn check_dimension(n: usize) -> Result<()> {
    if n < 3 {
        Err(domain("n", format!("dimension {n} < 3")))
    } else {
        Ok(())
    }
}

/// The H-harmonic function `x -> S_m(|x|^2) |x|^m Z_m(x/|x|, pole)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolidHarmonic {
    n: usize,
    m: usize,
    pole: Vec<f64>,
}

impl SolidHarmonic {
    /// `pole` is normalized to a unit vector.
    pub fn new(n: usize, m: usize, pole: &[f64]) -> Result<Self> {
        check_dimension(n)?;
        if pole.len() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: pole.len(),
            });
        }
        let r = sqrt(norm_sq(pole));
        if !(r > 0.0) {
            return Err(domain("pole", "zero vector"));
        }
        Ok(Self {
            n,
            m,
            pole: pole.iter().map(|p| p / r).collect(),
        })
    }

    /// Pole along `e_1`.
    pub fn axial(n: usize, m: usize) -> Result<Self> {
        let mut e1 = alloc::vec![0.0; n];
        if n > 0 {
            e1[0] = 1.0;
        }
        Self::new(n, m, &e1)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn pole(&self) -> &[f64] {
        &self.pole
    }

    /// Value at a point of the closed ball.
    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: x.len(),
            });
        }
        let z = zonal(self.n, self.m, x, &self.pole);
        if z == 0.0 {
            return Ok(0.0);
        }
        let t = norm_sq(x).min(1.0);
        Ok(radial_profile(self.n, self.m, t)? * z)
    }
}

/// One mode of a Peter-Weyl expansion: the squared boundary norm of the
/// degree-`m` component, as extracted at `radius`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SpectrumEntry {
    pub m: usize,
    pub norm_sq: f64,
    pub radius: f64,
}

/// Squared boundary norms of the modes `0..=max_mode` of an H-harmonic function
/// `f` that is zonal about `e_1`, read off on the sphere of radius `r`.
pub fn zonal_components<F>(f: F, n: usize, r: f64, max_mode: usize) -> Result<Vec<SpectrumEntry>>
where
    F: Fn(&[f64]) -> f64,
{
    zonal_components_with_order(f, n, r, max_mode, DEFAULT_ZONAL_ORDER)
}

pub fn zonal_components_with_order<F>(
    f: F,
    n: usize,
    r: f64,
    max_mode: usize,
    order: usize,
) -> Result<Vec<SpectrumEntry>>
where
    F: Fn(&[f64]) -> f64,
{
    check_dimension(n)?;
    if !(r > 0.0 && r < 1.0) {
        return Err(domain("r", format!("radius {r} outside (0, 1)")));
    }
    let mut scales = Vec::with_capacity(max_mode + 1);
    for m in 0..=max_mode {
        let scale = powf(r, m as f64) * radial_profile(n, m, r * r)?;
        if scale < UNDERFLOW_THRESHOLD {
            return Err(Error::Underflow { mode: m, value: scale });
        }
        scales.push(scale);
    }
    let rule = zonal_sphere_rule(n, order)?;
    let samples: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&u| {
            let mut x = alloc::vec![0.0; n];
            x[0] = r * u;
            x[1] = r * sqrt((1.0 - u * u).max(0.0));
            f(&x)
        })
        .collect();
    let mut out = Vec::with_capacity(max_mode + 1);
    for (m, scale) in scales.into_iter().enumerate() {
        let dim = dim_harmonics(n, m) as f64;
        let proj: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .zip(&samples)
            .map(|((&u, &w), &fx)| w * fx * zonal_unit(n, m, u))
            .sum();
        let c = proj / dim / scale;
        out.push(SpectrumEntry {
            m,
            norm_sq: c * c * dim,
            radius: r,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::zonal_sphere_rule;

    #[test]
    fn dimensions() {
        assert_eq!(dim_harmonics(5, 0), 1);
        assert_eq!(dim_harmonics(3, 1), 3);
        assert_eq!(dim_harmonics(3, 7), 15);
        assert_eq!(dim_harmonics(4, 2), 9);
        assert_eq!(dim_harmonics(4, 5), 36);
        assert_eq!(dim_harmonics(5, 1), 5);
    }

    #[test]
    fn zonal_values() {
        for n in 3..=6 {
            let mut zeta = alloc::vec![0.0; n];
            zeta[0] = 0.6;
            zeta[1] = 0.8;
            for m in 0..10 {
                let d = dim_harmonics(n, m) as f64;
                assert!((zonal(n, m, &zeta, &zeta) - d).abs() < 1e-12 * d);
            }
        }
        assert_eq!(zonal(3, 1, &[0.1, 0.0, 0.0], &[0.0, 0.2, 0.0]), 0.0);
        let z1 = zonal(4, 1, &[0.1, 0.2, 0.0, 0.3], &[0.3, -0.1, 0.5, 0.0]);
        assert!((z1 - 4.0 * (0.03 - 0.02)).abs() < 1e-15);
        assert_eq!(zonal(3, 2, &[0.0; 3], &[0.1, 0.0, 0.0]), 0.0);
    }

    #[test]
    fn zonal_harmonics_are_orthogonal() {
        for n in [3usize, 4, 5] {
            let rule = zonal_sphere_rule(n, 64).unwrap();
            for m in 0..=8 {
                for k in 0..=8 {
                    let ip = rule.integrate(|u| zonal_unit(n, m, u) * zonal_unit(n, k, u));
                    let want = if m == k { dim_harmonics(n, m) as f64 } else { 0.0 };
                    assert!((ip - want).abs() < 1e-10, "n={n} m={m} k={k}");
                }
            }
        }
    }

    #[test]
    fn profiles() {
        assert_eq!(radial_profile(4, 0, 0.3).unwrap(), 1.0);
        assert!((radial_profile(3, 1, 0.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        for n in 3..=6 {
            for m in 0..=20 {
                assert!((radial_profile(n, m, 1.0).unwrap() - 1.0).abs() < 1e-12, "n={n} m={m}");
                // continuity into t = 1
                let near = radial_profile(n, m, 1.0 - 1e-9).unwrap();
                assert!((near - 1.0).abs() < 1e-6, "n={n} m={m}: {near}");
            }
        }
    }

    #[test]
    fn radial_derivative_matches_finite_differences() {
        assert_eq!(radial_derivative(3, 0, 1, 0.4).unwrap(), 0.0);
        let g = |t: f64| powf(t, 1.5) * radial_profile(4, 3, t).unwrap();
        let t = 0.7;
        let h = 1e-5;
        let fd = 2.0 * t * (g(t + h) - g(t - h)) / (2.0 * h);
        let got = radial_derivative(4, 3, 1, t).unwrap();
        assert!((got - fd).abs() < 1e-7 * fd.abs(), "{got} vs {fd}");
        assert!(
            (radial_derivative(5, 4, 0, 0.3).unwrap() - powf(0.3, 2.0) * radial_profile(5, 4, 0.3).unwrap()).abs()
                < 1e-15
        );
        assert!(radial_derivative(4, 3, 3, 0.5).is_err());
    }

    #[test]
    fn single_mode_spectrum() {
        let h = SolidHarmonic::axial(3, 2).unwrap();
        assert_eq!(h.eval(&[0.0; 3]).unwrap(), 0.0);
        let spec = zonal_components(|x| h.eval(x).unwrap(), 3, 0.7, 6).unwrap();
        for e in &spec {
            let want = if e.m == 2 { 5.0 } else { 0.0 };
            assert!((e.norm_sq - want).abs() < 1e-12, "{e:?}");
        }
    }
}
