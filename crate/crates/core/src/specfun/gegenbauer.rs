//! Gegenbauer (ultraspherical) polynomials.

/// `C_m^lambda(u)` by the three-term recurrence
/// `(k+1) C_{k+1} = 2 (k+lambda) u C_k - (k+2 lambda-1) C_{k-1}`.
pub fn gegenbauer(lambda: f64, m: usize, u: f64) -> f64 {
    debug_assert!(lambda > 0.0);
    if m == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 2.0 * lambda * u;
    for k in 1..m {
        let kf = k as f64;
        let next = (2.0 * (kf + lambda) * u * cur - (kf + 2.0 * lambda - 1.0) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::pochhammer;

    #[test]
    fn low_orders_and_endpoint() {
        assert_eq!(gegenbauer(2.3, 0, 0.4), 1.0);
        assert!((gegenbauer(0.5, 2, 1.0) - 1.0).abs() < 1e-15);
        assert!((gegenbauer(0.5, 2, 0.6) - 0.04).abs() < 1e-15);
        for m in 0..40 {
            let lambda = 1.5;
            let end = pochhammer(2.0 * lambda, m) / pochhammer(1.0, m);
            assert!((gegenbauer(lambda, m, 1.0) - end).abs() <= 1e-12 * end);
        }
    }

    #[test]
    fn chebyshev_second_kind_at_lambda_one() {
        // C_m^1(cos t) = sin((m+1) t) / sin t
        let t: f64 = 0.7;
        for m in 0..200 {
            let want = ((m as f64 + 1.0) * t).sin() / t.sin();
            assert!((gegenbauer(1.0, m, t.cos()) - want).abs() < 1e-11);
        }
    }
}
