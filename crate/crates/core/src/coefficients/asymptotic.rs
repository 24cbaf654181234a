//! The constant `L_k(s)` in `I_{m,k}(s) ~ L_k(s) m^(2k-s-1)` as `m -> infinity`.

use crate::math::{exp, is_nonpositive_integer, ln};
use crate::specfun::{ln_gamma_ratio, ln_gamma_signed, series::sum_algebraic};
use crate::{domain, Result};
use alloc::format;

/// `L_k(s) = Gamma(n/2) Gamma(1+n/2+s) Gamma(n+s-k)^2 / Gamma(n-1)^2
///   * sum_j (1-n/2)_j^2 (s+1)_j / j! * F~(-k, 1-n/2+j; 1+n/2+s-k+j; -1)^2`,
/// with `F~` the regularized Gauss function. The series converges for
/// `2n + s > 2k + 1`.
pub fn leading_constant(n: usize, k: usize, s: f64) -> Result<f64> {
    let nf = n as f64;
    let kf = k as f64;
    let excess = 2.0 * nf + s - 2.0 * kf - 1.0;
    if n < 3 {
        return Err(domain("n", format!("dimension {n} < 3")));
    }
    if !(excess > 0.0) {
        return Err(domain("s", format!("series diverges: 2n + s - 2k - 1 = {excess} <= 0")));
    }
    let (lg, sign) = ln_gamma_ratio(
        &[nf / 2.0, 1.0 + nf / 2.0 + s, nf + s - kf, nf + s - kf],
        &[nf - 1.0, nf - 1.0],
    );
    if sign == 0.0 {
        return Ok(0.0);
    }
    // terms carried as ln|(1-n/2)_j| and (s+1)_j / j!
    let b0 = 1.0 - nf / 2.0;
    let mut log_poch = 0.0;
    let mut poch_zero = false;
    let mut ratio = 1.0;
    let mut j = 0usize;
    let mut failure = None;
    let sum = sum_algebraic(
        || {
            if failure.is_some() || poch_zero || ratio == 0.0 {
                return None;
            }
            let jf = j as f64;
            let c = 1.0 + nf / 2.0 + s - kf + jf;
            // (1-n/2)_j F~ = sum_i (-k)_i (b0+j)_i (-1)^i / i! * (1-n/2)_j / Gamma(c+i)
            let mut h = 0.0;
            let mut coef = 1.0;
            for i in 0..=k {
                let fi = i as f64;
                if coef != 0.0 && !is_nonpositive_integer(c + fi) {
                    let (lgc, sgc) = ln_gamma_signed(c + fi);
                    h += coef * sgc * exp(log_poch - lgc);
                }
                coef *= (kf - fi) * (b0 + jf + fi) / (fi + 1.0);
            }
            let term = h * h * ratio;
            // advance j
            let f = b0 + jf;
            if f == 0.0 {
                poch_zero = true;
            } else {
                log_poch += ln(f.abs());
            }
            ratio *= (s + 1.0 + jf) / (jf + 1.0);
            j += 1;
            Some(term)
        },
        excess,
        32,
        10,
    );
    let sum = match sum {
        Ok(v) => v.value,
        Err(e) => {
            failure = Some(e);
            0.0
        }
    };
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(sign * exp(lg) * sum)
}
