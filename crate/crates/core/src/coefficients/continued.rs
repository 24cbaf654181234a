//! Meromorphic continuation `I_m(s) = A(s) + B(s)`.
//!
//! Substituting the logarithmic expansion of `S_m` around `t = 1` into the
//! defining integral and integrating term by term gives
//!
//! `A(s) = (n-1)_m sum_{k=0}^{n-2} (m)_k (1-n/2)_k (s+1)_k / (k! (2-n)_k (n/2+s+1)_k (n+s+k)_m)`,
//!
//! a rational function of `s`, and, for odd `n` only,
//!
//! `B(s) = P(s) sum_k [e] D_k(e)`, `[e] f = f'(0)`, where
//! `P(s) = (-1)^n (n-1)_m Gamma(n/2+s+1) Gamma(s+n) Gamma(2n+s-1)^2 (s+1)_{n-1} / (Gamma(m) Gamma(1-n/2) Gamma(n-1))`
//! and
//! `D_k(e) = Gamma(n/2+k+e) Gamma(m+n-1+k+e) (s+n)_k^2 (2n+s-1)_k^2
//!  / (Gamma(k+1+e) Gamma(k+n+e) Gamma(3n/2+s+k+e) Gamma(m+2n+s-1+k+e) Gamma(s+n+k-e) Gamma(2n+s+k-1-e))`.
//!
//! Every factor of `D_k` is entire in `e`, so the derivative is taken
//! analytically: each factor is tracked as a first-order germ, and the
//! reciprocal gammas sitting on a pole contribute their exact derivative.

use crate::math::{exp, is_nonpositive_integer, ln, KahanSum};
use crate::specfun::{
    d_recip_gamma, digamma, ln_gamma_ratio, ln_gamma_signed, ln_pochhammer, pochhammer, series::sum_algebraic,
};
use crate::Result;

/// The two pieces of the continuation at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuedParts {
    pub a: f64,
    pub b: f64,
}

impl ContinuedParts {
    pub fn total(&self) -> f64 {
        self.a + self.b
    }
}

/// `A(s)` and `B(s)` at a point off the pole lattice.
pub fn continued_parts(n: usize, m: usize, s: f64) -> Result<ContinuedParts> {
    if m == 0 {
        return Ok(ContinuedParts { a: 1.0, b: 0.0 });
    }
    let a = part_a(n, m, s);
    let b = if n % 2 == 1 { part_b(n, m, s)? } else { 0.0 };
    Ok(ContinuedParts { a, b })
}

fn part_a(n: usize, m: usize, s: f64) -> f64 {
    let nf = n as f64;
    let mf = m as f64;
    let mut acc = KahanSum::new();
    // (m)_k (1-n/2)_k (s+1)_k / (k! (2-n)_k (n/2+s+1)_k), by recurrence in k
    let mut coef = 1.0;
    for k in 0..=(n - 2) {
        let kf = k as f64;
        if coef != 0.0 {
            // (n-1)_m / (n+s+k)_m as a product of ratios near one
            let mut ratio = 1.0;
            for i in 0..m {
                let i = i as f64;
                ratio *= (nf - 1.0 + i) / (nf + s + kf + i);
            }
            acc.add(coef * ratio);
        }
        coef *= (mf + kf) * (1.0 - nf / 2.0 + kf) * (s + 1.0 + kf)
            / ((kf + 1.0) * (2.0 - nf + kf) * (nf / 2.0 + s + 1.0 + kf));
    }
    acc.value()
}

/// First-order germ `f(e) = f(0) + f'(0) e` of a product of factors.
///
/// Nonzero factors are kept as sign, log-magnitude and logarithmic
/// derivative. A factor vanishing at `e = 0` contributes its derivative to
/// the magnitude and one to `zeros`; a factor vanishing identically adds two.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Germ {
    zeros: u32,
    sign: f64,
    log_mag: f64,
    dlog: f64,
}

impl Germ {
    fn one() -> Self {
        Self {
            zeros: 0,
            sign: 1.0,
            log_mag: 0.0,
            dlog: 0.0,
        }
    }

    fn scale(&mut self, value: f64, dlog: f64) {
        if value == 0.0 {
            self.zeros += 2;
            return;
        }
        self.sign *= value.signum();
        self.log_mag += ln(value.abs());
        self.dlog += dlog;
    }

    /// Times `Gamma(a + e)`; `a` must not be a pole.
    fn gamma_plus(&mut self, a: f64) {
        let (l, sg) = ln_gamma_signed(a);
        self.sign *= sg;
        self.log_mag += l;
        self.dlog += digamma(a);
    }

    /// Times `1/Gamma(a + e)`.
    fn recip_gamma_plus(&mut self, a: f64) {
        if is_nonpositive_integer(a) {
            // 1/Gamma(-j + e) = (-1)^j j! e + O(e^2)
            self.zero_factor(-d_recip_gamma(a));
        } else {
            let (l, sg) = ln_gamma_signed(a);
            self.sign *= sg;
            self.log_mag -= l;
            self.dlog -= digamma(a);
        }
    }

    /// Times `1/Gamma(a - e)`.
    fn recip_gamma_minus(&mut self, a: f64) {
        if is_nonpositive_integer(a) {
            self.zero_factor(d_recip_gamma(a));
        } else {
            let (l, sg) = ln_gamma_signed(a);
            self.sign *= sg;
            self.log_mag -= l;
            self.dlog += digamma(a);
        }
    }

    fn zero_factor(&mut self, derivative: f64) {
        self.zeros += 1;
        self.sign *= derivative.signum();
        self.log_mag += ln(derivative.abs());
    }

    /// `f'(0)` as `(sign, log-magnitude)`; sign zero when it vanishes.
    fn derivative(&self) -> (f64, f64) {
        match self.zeros {
            0 => {
                if self.dlog == 0.0 {
                    (0.0, f64::NEG_INFINITY)
                } else {
                    (self.sign * self.dlog.signum(), self.log_mag + ln(self.dlog.abs()))
                }
            }
            1 => (self.sign, self.log_mag),
            _ => (0.0, f64::NEG_INFINITY),
        }
    }
}

/// The arguments entering `D_k`, shifted by `k`.
struct SeriesArgs {
    n: f64,
    m: f64,
    s: f64,
}

impl SeriesArgs {
    fn germ(&self, k: usize) -> Germ {
        let (n, m, s) = (self.n, self.m, self.s);
        let kf = k as f64;
        let mut g = Germ::one();
        g.gamma_plus(n / 2.0 + kf);
        g.gamma_plus(m + n - 1.0 + kf);
        g.recip_gamma_plus(kf + 1.0);
        g.recip_gamma_plus(kf + n);
        g.recip_gamma_plus(1.5 * n + s + kf);
        g.recip_gamma_plus(m + 2.0 * n + s - 1.0 + kf);
        for base in [s + n, 2.0 * n + s - 1.0] {
            let (l, sg) = ln_pochhammer(base, k);
            if sg == 0.0 {
                g.scale(0.0, 0.0);
            } else {
                g.sign *= sg * sg;
                g.log_mag += 2.0 * l;
            }
        }
        g.recip_gamma_minus(s + n + kf);
        g.recip_gamma_minus(2.0 * n + s + kf - 1.0);
        g
    }

    /// All gamma arguments positive from this index on.
    fn regular_from(&self) -> usize {
        let (n, m, s) = (self.n, self.m, self.s);
        let lowest = [s + n, 1.5 * n + s, m + 2.0 * n + s - 1.0, 2.0 * n + s - 1.0]
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if lowest > 0.0 {
            0
        } else {
            (-lowest) as usize + 1
        }
    }

    /// `D_{k+1}/D_k` on the regular range, and the increment of the log-derivative.
    fn step(&self, k: usize) -> (f64, f64) {
        let (n, m, s) = (self.n, self.m, self.s);
        let kf = k as f64;
        let up = [n / 2.0 + kf, m + n - 1.0 + kf, s + n + kf, 2.0 * n + s - 1.0 + kf];
        let down = [kf + 1.0, kf + n, 1.5 * n + s + kf, m + 2.0 * n + s - 1.0 + kf];
        let ratio = up.iter().product::<f64>() / down.iter().product::<f64>();
        let dlog = up.iter().map(|x| 1.0 / x).sum::<f64>() - down.iter().map(|x| 1.0 / x).sum::<f64>();
        (ratio, dlog)
    }
}

fn part_b(n: usize, m: usize, s: f64) -> Result<f64> {
    let nf = n as f64;
    let mf = m as f64;
    // P(s); (s+1)_{n-1} may vanish
    let poch = pochhammer(s + 1.0, n - 1);
    if poch == 0.0 {
        return Ok(0.0);
    }
    let (lp, sp) = ln_gamma_ratio(
        &[
            nf - 1.0 + mf,
            nf / 2.0 + s + 1.0,
            s + nf,
            2.0 * nf + s - 1.0,
            2.0 * nf + s - 1.0,
        ],
        &[nf - 1.0, mf, 1.0 - nf / 2.0, nf - 1.0],
    );
    let mut sign_p = sp * poch.signum();
    if n % 2 == 1 {
        sign_p = -sign_p;
    }
    let log_p = lp + ln(poch.abs());

    let args = SeriesArgs { n: nf, m: mf, s };
    let k0 = args.regular_from();
    // reference scale for all terms
    let mut reference = None;
    let mut head = KahanSum::new();
    for k in 0..k0 {
        let (sg, lm) = args.germ(k).derivative();
        if sg == 0.0 {
            continue;
        }
        let r = *reference.get_or_insert(lm);
        head.add(sg * exp(lm - r));
    }
    let g = args.germ(k0);
    let mut value_scaled = 0.0;
    let mut dlog = g.dlog;
    if g.zeros == 0 {
        let r = *reference.get_or_insert(g.log_mag);
        value_scaled = g.sign * exp(g.log_mag - r);
    }
    let reference = reference.unwrap_or(0.0);
    let mut k = k0;
    let start = ((4.0 * (mf + 2.0 * nf + s.abs())) as usize).max(32).next_power_of_two();
    let tail = sum_algebraic(
        || {
            let term = value_scaled * dlog;
            let (ratio, inc) = args.step(k);
            value_scaled *= ratio;
            dlog += inc;
            k += 1;
            Some(term)
        },
        1.0,
        start,
        10,
    )?;
    let total = head.value() + tail.value;
    Ok(sign_p * exp(log_p + reference) * total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn germ_derivatives_of_reciprocal_gamma() {
        // d/de [1/Gamma(-2 - e)] = d_recip_gamma(-2) = -2
        let mut g = Germ::one();
        g.recip_gamma_minus(-2.0);
        assert_eq!(g.derivative(), (-1.0, ln(2.0)));
        // d/de [1/Gamma(-1 + e)] = (-1)^1 1! = -1
        let mut g = Germ::one();
        g.recip_gamma_plus(-1.0);
        let (sg, lm) = g.derivative();
        assert_eq!(sg, -1.0);
        assert!(lm.abs() < 1e-15);
        // two vanishing factors kill the first derivative
        g.recip_gamma_plus(0.0);
        assert_eq!(g.derivative().0, 0.0);
    }

    #[test]
    fn germ_of_a_regular_product_matches_finite_differences() {
        let f =
            |e: f64| crate::specfun::gamma(2.3 + e) / crate::specfun::gamma(4.1 + e) / crate::specfun::gamma(1.7 - e);
        let mut g = Germ::one();
        g.gamma_plus(2.3);
        g.recip_gamma_plus(4.1);
        g.recip_gamma_minus(1.7);
        let (sg, lm) = g.derivative();
        let h = 1e-5;
        let fd = (f(h) - f(-h)) / (2.0 * h);
        assert!((sg * exp(lm) - fd).abs() < 1e-8 * fd.abs());
    }

    #[test]
    fn even_dimension_has_no_logarithmic_part() {
        let p = continued_parts(4, 3, 0.7).unwrap();
        assert_eq!(p.b, 0.0);
    }
}
