//! Rising factorials.

use crate::math::ln;

/// `(x)_k = x (x+1) ... (x+k-1)`, evaluated as the exact product.
pub fn pochhammer(x: f64, k: usize) -> f64 {
    let mut p = 1.0;
    for i in 0..k {
        p *= x + i as f64;
    }
    p
}

/// `(ln|(x)_k|, sign (x)_k)`. A vanishing factor gives `(-inf, 0)`.
pub fn ln_pochhammer(x: f64, k: usize) -> (f64, f64) {
    let mut lg = 0.0;
    let mut sign = 1.0;
    for i in 0..k {
        let f = x + i as f64;
        if f == 0.0 {
            return (f64::NEG_INFINITY, 0.0);
        }
        if f < 0.0 {
            sign = -sign;
        }
        lg += ln(f.abs());
    }
    (lg, sign)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::exp;

    #[test]
    fn small_cases() {
        assert_eq!(pochhammer(3.7, 0), 1.0);
        assert_eq!(pochhammer(1.0, 5), 120.0);
        assert_eq!(pochhammer(-3.0, 5), 0.0);
        assert_eq!(pochhammer(-2.5, 2), 3.75);
        assert_eq!(ln_pochhammer(-3.0, 5), (f64::NEG_INFINITY, 0.0));
        assert_eq!(ln_pochhammer(0.5, 0), (0.0, 1.0));
    }

    #[test]
    fn log_form_matches_product() {
        for &(x, k) in &[(0.3, 7usize), (-4.5, 6), (12.0, 30), (-0.25, 3)] {
            let p = pochhammer(x, k);
            let (l, s) = ln_pochhammer(x, k);
            assert_eq!(s, p.signum());
            assert!((s * exp(l) - p).abs() <= 1e-14 * p.abs());
        }
    }
}
