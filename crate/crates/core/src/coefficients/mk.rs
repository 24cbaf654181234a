//! The generalized coefficients
//! `I_{m,k}(s) = Gamma(n/2+s+1)/(Gamma(n/2) Gamma(s+1)) int_0^1 [(2t d/dt)^k (t^(m/2) S_m(t))]^2 t^(n/2-1) (1-t)^s dt`.

use super::{check_dimension, measure_constant, CoefficientValue, Method};
use crate::coefficients::diff_weights;
use crate::math::exp;
use crate::quadrature::{jacobi_rule, DEFAULT_RADIAL_ORDER};
use crate::specfun::{hyp2f1, hyp3f2_unit, ln_gamma_ratio, series::sum_algebraic_to};
use crate::{domain, Result};
use alloc::format;
use alloc::vec::Vec;

fn check_k(n: usize, k: usize) -> Result<()> {
    if k > n - 2 {
        Err(domain("k", format!("k = {k} exceeds n - 2 = {}", n - 2)))
    } else {
        Ok(())
    }
}

/// `I_{m,k}(s)` by quadrature, `s > -1`, `0 <= k <= n-2`.
pub fn coeff_mk(n: usize, m: usize, k: usize, s: f64) -> Result<CoefficientValue> {
    coeff_mk_with_order(n, m, k, s, DEFAULT_RADIAL_ORDER)
}

pub fn coeff_mk_with_order(n: usize, m: usize, k: usize, s: f64, order: usize) -> Result<CoefficientValue> {
    check_dimension(n)?;
    check_k(n, k)?;
    if !(s > -1.0) {
        return Err(domain("s", format!("quadrature needs s > -1, got {s}")));
    }
    let nf = n as f64;
    let mf = m as f64;
    let weights = diff_weights(m, k);
    let (lg, _) = ln_gamma_ratio(&[nf - 1.0 + mf, nf / 2.0], &[nf - 1.0, nf / 2.0 + mf]);
    let pre = exp(lg);
    // t^m from the square of t^(m/2) goes into the weight
    let rule = jacobi_rule(s, mf + nf / 2.0 - 1.0, order)?;
    let mut acc = 0.0;
    for (&t, &w) in rule.nodes.iter().zip(&rule.weights) {
        let mut d = 0.0;
        for (j, &c) in weights.weights.iter().enumerate() {
            if c != 0.0 {
                d += c * hyp2f1(mf + j as f64, 1.0 - nf / 2.0, mf + nf / 2.0, t, false)?;
            }
        }
        let d = pre * d;
        acc += w * d * d;
    }
    Ok(CoefficientValue {
        n,
        m,
        k,
        s,
        value: super::Coefficient::Finite(measure_constant(n, s) * acc),
        method: Method::Quadrature,
        residue: None,
    })
}

/// `(n-1)_m^2/(n/2)_m^2 * int_0^1 t^(m+n/2-1) (1-t)^s F_j(t) F_l(t) dt`, with
/// `F_j = 2F1(m+j, 1-n/2; m+n/2; t)`, through its series of unit-argument `3F2`.
fn tilde_integral(n: usize, m: usize, s: f64, j: usize, l: usize) -> Result<f64> {
    let nf = n as f64;
    let mf = m as f64;
    let (jf, lf) = (j as f64, l as f64);
    let (lg, sign) = ln_gamma_ratio(
        &[
            mf + nf - 1.0,
            nf / 2.0,
            nf / 2.0,
            s + 1.0,
            nf + s - jf,
            2.0 * nf + s - 1.0 - jf - lf,
        ],
        &[
            mf + nf + s,
            nf - 1.0,
            nf - 1.0,
            nf / 2.0 + s + 1.0 - jf,
            1.5 * nf + s - jf - lf,
        ],
    );
    let a = [1.0 - nf / 2.0, nf + s - jf, nf + s - lf, s + 1.0];
    let b = [1.5 * nf + s - jf - lf, mf + nf + s, nf / 2.0 + s + 1.0 - jf];
    let mut coef = 1.0;
    let mut r = 0usize;
    let mut failure = None;
    // terms decay like r^-(m+n); stop once the tail bound is negligible
    let decay = mf + nf;
    let mut running = 0.0f64;
    let outer = sum_algebraic_to(
        || {
            if failure.is_some() {
                return None;
            }
            let rf = r as f64;
            let inner = hyp3f2_unit(
                1.0 - nf / 2.0 + rf,
                nf + s - jf + rf,
                nf / 2.0 - jf,
                1.5 * nf + s - jf - lf + rf,
                nf / 2.0 + s + 1.0 - jf + rf,
                false,
            );
            let term = match inner {
                Ok(v) => coef * v,
                Err(e) => {
                    failure = Some(e);
                    return None;
                }
            };
            let up: f64 = a.iter().map(|x| x + rf).product();
            let down: f64 = b.iter().map(|x| x + rf).product::<f64>() * (rf + 1.0);
            coef *= up / down;
            r += 1;
            if term == 0.0 && coef == 0.0 {
                return None;
            }
            running += term;
            if r > 8 && term.abs() * rf < 1e-17 * (decay - 1.0) * running.abs() {
                return None;
            }
            Some(term)
        },
        mf + nf - 1.0,
        8,
        6,
        1e-13,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(sign * exp(lg) * outer.value)
}

/// `I_{m,k}(s)` through the double sum over the weights `c_{j,k}(m)` of the
/// integrals of products of shifted profiles, each given as a series of
/// unit-argument `3F2`. Needs `n + s > k`.
pub fn coeff_mk_series(n: usize, m: usize, k: usize, s: f64) -> Result<CoefficientValue> {
    check_dimension(n)?;
    check_k(n, k)?;
    let nf = n as f64;
    if !(s > -1.0) || !(nf + s > k as f64) || m + n <= 1 {
        return Err(domain(
            "s",
            format!("series path needs s > -1 and n + s > k, got s = {s}"),
        ));
    }
    let weights = diff_weights(m, k);
    let mut table: Vec<Vec<f64>> = alloc::vec![alloc::vec![0.0; k + 1]; k + 1];
    for j in 0..=k {
        for l in j..=k {
            let v = tilde_integral(n, m, s, j, l)?;
            table[j][l] = v;
            table[l][j] = v;
        }
    }
    let mut acc = 0.0;
    for j in 0..=k {
        for l in 0..=k {
            acc += weights.weights[j] * weights.weights[l] * table[j][l];
        }
    }
    Ok(CoefficientValue {
        n,
        m,
        k,
        s,
        value: super::Coefficient::Finite(measure_constant(n, s) * acc),
        method: Method::ClosedMoment,
        residue: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::coeff_quadrature;

    #[test]
    fn order_zero_is_the_plain_coefficient() {
        let a = coeff_mk(4, 5, 0, 0.5).unwrap().value().unwrap();
        let b = coeff_quadrature(4, 5, 0.5).unwrap().value().unwrap();
        assert!((a - b).abs() < 1e-13 * b);
    }

    #[test]
    fn both_paths_agree() {
        let q = coeff_mk(5, 6, 1, 0.25).unwrap().value().unwrap();
        let c = coeff_mk_series(5, 6, 1, 0.25).unwrap().value().unwrap();
        assert!((q - c).abs() < 1e-8 * q.abs(), "{q} vs {c}");
        let q = coeff_mk(3, 2, 0, 0.0).unwrap().value().unwrap();
        let c = coeff_mk_series(3, 2, 0, 0.0).unwrap().value().unwrap();
        assert!((q - c).abs() < 1e-8 * q.abs(), "{q} vs {c}");
    }
}
