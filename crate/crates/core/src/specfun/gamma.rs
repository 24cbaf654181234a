//! Gamma, log-gamma, digamma and the entire function `1/Gamma`.

use crate::math::{cos_pi, exp, floor, is_nonpositive_integer, ln, powf, sin_pi, sqrt, PI};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

// B_{2k} / (2k (2k-1)) for the Stirling series of ln Gamma.
const STIRLING_LN: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

// B_{2k} / (2k) for the asymptotic series of digamma.
const STIRLING_PSI: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
];

const ASYMPTOTIC_FROM: f64 = 10.0;

/// Everything the residue calculus needs to know about `Gamma` at one point.
///
/// `None` marks a pole (for `gamma` and `digamma`) or an argument outside the
/// domain of `log_gamma` (which is only defined for `x > 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaBundle {
    pub x: f64,
    pub gamma: Option<f64>,
    pub log_gamma: Option<f64>,
    pub digamma: Option<f64>,
    pub recip_gamma: f64,
    /// `d/de [1/Gamma(x - e)]` at `e = 0`.
    pub d_recip_gamma: f64,
}

pub fn gamma_family(x: f64) -> GammaBundle {
    let pole = is_nonpositive_integer(x);
    GammaBundle {
        x,
        gamma: (!pole).then(|| gamma(x)),
        log_gamma: (x > 0.0).then(|| ln_gamma(x)),
        digamma: (!pole).then(|| digamma(x)),
        recip_gamma: recip_gamma(x),
        d_recip_gamma: d_recip_gamma(x),
    }
}

/// `Gamma(x)`; NaN at the poles.
pub fn gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    if x < 0.5 {
        // reflection; sin_pi is exact away from the poles
        return PI / (sin_pi(x) * gamma(1.0 - x));
    }
    if x > 171.7 {
        return f64::INFINITY;
    }
    if x == floor(x) && x <= 23.0 {
        let mut p = 1.0;
        let mut k = 2.0;
        while k < x {
            p *= k;
            k += 1.0;
        }
        return p;
    }
    let z = x - 1.0;
    let mut series = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    // split the power to keep t^(z+1/2) finite up to x ~ 171
    let half = powf(t, 0.5 * (z + 0.5));
    sqrt(2.0 * PI) * half * (half * exp(-t)) * series
}

/// `ln Gamma(x)` for `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x < 15.0 {
        return ln(gamma(x));
    }
    let z = x;
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut corr = 0.0;
    let mut p = inv;
    for c in STIRLING_LN {
        corr += c * p;
        p *= inv2;
    }
    (z - 0.5) * ln(z) - z + 0.5 * ln(2.0 * PI) + corr
}

/// `(ln|Gamma(x)|, sign Gamma(x))` for any `x` off the poles.
///
/// At a pole this returns `(+inf, NaN)`.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if is_nonpositive_integer(x) {
        return (f64::INFINITY, f64::NAN);
    }
    if x > 0.0 {
        return (ln_gamma(x), 1.0);
    }
    let s = sin_pi(x);
    (ln(PI) - ln(s.abs()) - ln_gamma(1.0 - x), s.signum())
}

/// Digamma `psi(x) = Gamma'(x)/Gamma(x)`; NaN at the poles.
pub fn digamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return f64::NAN;
    }
    if x < 0.0 {
        return digamma(1.0 - x) - PI * cos_pi(x) / sin_pi(x);
    }
    let mut acc = 0.0;
    let mut z = x;
    while z < ASYMPTOTIC_FROM {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut p = inv2;
    let mut tail = 0.0;
    for c in STIRLING_PSI {
        tail += c * p;
        p *= inv2;
    }
    acc + ln(z) - 0.5 / z - tail
}

/// `1/Gamma(x)`, an entire function: exactly zero at non-positive integers.
pub fn recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        return 0.0;
    }
    if x >= 0.5 {
        if x < 170.0 {
            1.0 / gamma(x)
        } else {
            exp(-ln_gamma(x))
        }
    } else if 1.0 - x < 170.0 {
        sin_pi(x) * gamma(1.0 - x) / PI
    } else {
        let (la, sign) = ln_gamma_signed(x);
        sign * exp(-la)
    }
}

/// `d/de [1/Gamma(x - e)]` at `e = 0`, which equals `psi(x)/Gamma(x)` off the poles
/// and `(-1)^(j+1) j!` at `x = -j`.
pub fn d_recip_gamma(x: f64) -> f64 {
    if is_nonpositive_integer(x) {
        let j = -x;
        let sign = if (j as u64) % 2 == 0 { -1.0 } else { 1.0 };
        return sign * gamma(j + 1.0);
    }
    digamma(x) * recip_gamma(x)
}

/// Log-space `Gamma(a_1)...Gamma(a_p) / (Gamma(b_1)...Gamma(b_q))`.
///
/// Returns `(ln|ratio|, sign)`; a pole in the denominator yields `(-inf, 0)`,
/// a pole in the numerator `(+inf, NaN)`.
pub fn ln_gamma_ratio(num: &[f64], den: &[f64]) -> (f64, f64) {
    if den.iter().any(|&b| is_nonpositive_integer(b)) {
        if num.iter().any(|&a| is_nonpositive_integer(a)) {
            return (f64::NAN, f64::NAN);
        }
        return (f64::NEG_INFINITY, 0.0);
    }
    let mut lg = 0.0;
    let mut sign = 1.0;
    for &a in num {
        let (l, s) = ln_gamma_signed(a);
        lg += l;
        sign *= s;
    }
    for &b in den {
        let (l, s) = ln_gamma_signed(b);
        lg -= l;
        sign *= s;
    }
    (lg, sign)
}

/// Plain-value version of [`ln_gamma_ratio`].
pub fn gamma_ratio(num: &[f64], den: &[f64]) -> f64 {
    let (lg, sign) = ln_gamma_ratio(num, den);
    if sign == 0.0 {
        0.0
    } else {
        sign * exp(lg)
    }
}

/// `B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b)`.
pub fn beta(a: f64, b: f64) -> f64 {
    gamma_ratio(&[a, b], &[a + b])
}
