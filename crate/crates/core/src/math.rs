//! Thin `libm` wrappers so the rest of the crate reads like ordinary float code.

pub(crate) use core::f64::consts::PI;

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    libm::exp(x)
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn powi(x: f64, k: i32) -> f64 {
    libm::pow(x, k as f64)
}

#[inline]
pub(crate) fn hypot(x: f64, y: f64) -> f64 {
    libm::hypot(x, y)
}

#[inline]
pub(crate) fn floor(x: f64) -> f64 {
    libm::floor(x)
}

#[inline]
pub(crate) fn round(x: f64) -> f64 {
    libm::round(x)
}

#[inline]
pub(crate) fn sin(x: f64) -> f64 {
    libm::sin(x)
}

#[inline]
pub(crate) fn cos(x: f64) -> f64 {
    libm::cos(x)
}

/// `sin(pi x)` with the argument reduced exactly first, so integers give exact zeros.
pub(crate) fn sin_pi(x: f64) -> f64 {
    if x.abs() >= 4_503_599_627_370_496.0 {
        // every double this large is an even integer
        return 0.0;
    }
    let r = x - 2.0 * floor(x / 2.0); // r in [0, 2)
    if r == 0.0 || r == 1.0 {
        return 0.0;
    }
    let (arg, sign) = if r < 1.0 { (r, 1.0) } else { (r - 1.0, -1.0) };
    let arg = if arg > 0.5 { 1.0 - arg } else { arg };
    sign * sin(PI * arg)
}

/// `cos(pi x)`, exact at half-integers.
pub(crate) fn cos_pi(x: f64) -> f64 {
    sin_pi(x + 0.5)
}

/// True when `x` is a non-positive integer (a pole of the gamma function).
#[inline]
pub(crate) fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == floor(x)
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sin_pi_is_exact_on_integers() {
        for k in -10..10 {
            assert_eq!(sin_pi(k as f64), 0.0);
        }
        assert!((sin_pi(0.5) - 1.0).abs() < 1e-16);
        assert!((sin_pi(-0.5) + 1.0).abs() < 1e-16);
        assert!((sin_pi(2.25) - sin(PI * 0.25)).abs() < 1e-15);
        assert_eq!(cos_pi(0.5), 0.0);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let mut s = KahanSum::new();
        s.add(1.0);
        for _ in 0..1000 {
            s.add(1e-17);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-14).abs() < 1e-20);
    }
}
