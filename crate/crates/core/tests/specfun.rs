use hdirichlet_core::specfun::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(1.0)
}

#[test]
fn gamma_at_integers_and_half_integers() {
    let mut factorial = 1.0;
    for k in 1..20 {
        assert!(close(gamma(k as f64), factorial, 1e-14));
        factorial *= k as f64;
    }
    assert!(close(gamma(0.5), PI.sqrt(), 1e-15));
    assert!(close(gamma(-0.5), -2.0 * PI.sqrt(), 1e-15));
}

#[test]
fn reciprocal_gamma_vanishes_at_poles() {
    for j in 0..6 {
        assert_eq!(recip_gamma(-(j as f64)), 0.0);
        // d/de 1/Gamma(-j - e) at e = 0 is (-1)^(j+1) j!
        let expected = if j % 2 == 0 { -1.0 } else { 1.0 } * gamma(j as f64 + 1.0);
        assert!(close(d_recip_gamma(-(j as f64)), expected, 1e-13));
    }
}

#[test]
fn gegenbauer_low_degrees() {
    for &(lambda, u) in &[(0.5, 0.3), (1.0, -0.7), (2.5, 0.9)] {
        assert!(close(gegenbauer(lambda, 0, u), 1.0, 1e-15));
        assert!(close(gegenbauer(lambda, 1, u), 2.0 * lambda * u, 1e-15));
        let c2 = 2.0 * lambda * (lambda + 1.0) * u * u - lambda;
        assert!(close(gegenbauer(lambda, 2, u), c2, 1e-14));
    }
}

#[test]
fn three_f_two_with_cancelling_pair_is_gauss() {
    let via_3f2 = hyp3f2_unit(0.4, 1.3, 2.2, 3.1, 2.2, false).unwrap();
    let via_2f1 = hyp2f1(0.4, 1.3, 3.1, 1.0, false).unwrap();
    assert!(close(via_3f2, via_2f1, 1e-12), "{via_3f2} vs {via_2f1}");
}

#[test]
fn terminating_series_is_a_polynomial() {
    // 2F1(-2, b; c; t) = 1 - 2bt/c + b(b+1)t^2/(c(c+1))
    let (b, c, t) = (1.7, 2.3, -0.8);
    let expected = 1.0 - 2.0 * b * t / c + b * (b + 1.0) * t * t / (c * (c + 1.0));
    assert!(close(hyp2f1(-2.0, b, c, t, false).unwrap(), expected, 1e-15));
}

#[test]
fn divergent_unit_argument_is_rejected() {
    assert!(hyp2f1(1.0, 1.0, 1.5, 1.0, false).is_err());
    assert!(hyp2f1(0.5, 0.5, 1.0, 1.2, false).is_err());
}

proptest! {
    #[test]
    fn gamma_recurrence(x in 0.05f64..30.0) {
        prop_assert!(close(gamma(x + 1.0), x * gamma(x), 1e-13));
    }

    #[test]
    fn gamma_reflection(x in 0.01f64..0.99) {
        prop_assert!(close(gamma(x) * gamma(1.0 - x), PI / (PI * x).sin(), 1e-13));
    }

    #[test]
    fn digamma_recurrence(x in 0.05f64..50.0) {
        prop_assert!(close(digamma(x + 1.0), digamma(x) + 1.0 / x, 1e-13));
    }

    #[test]
    fn log_gamma_ratio_matches_direct(a in 0.1f64..20.0, b in 0.1f64..20.0, c in 0.1f64..20.0) {
        let (l, sign) = ln_gamma_ratio(&[a, b], &[c]);
        prop_assert_eq!(sign, 1.0);
        prop_assert!(close(l, ln_gamma(a) + ln_gamma(b) - ln_gamma(c), 1e-13));
    }

    #[test]
    fn pochhammer_is_a_gamma_ratio(x in 0.1f64..10.0, k in 0usize..15) {
        prop_assert!(close(pochhammer(x, k), gamma(x + k as f64) / gamma(x), 1e-12));
    }

    #[test]
    fn gauss_function_is_symmetric(a in -2.0f64..3.0, b in -2.0f64..3.0, c in 0.5f64..5.0, t in 0.0f64..0.95) {
        let ab = hyp2f1(a, b, c, t, false).unwrap();
        let ba = hyp2f1(b, a, c, t, false).unwrap();
        prop_assert!(close(ab, ba, 1e-12));
    }

    #[test]
    fn euler_transformation(a in -1.5f64..2.5, b in -1.5f64..2.5, c in 0.5f64..4.0, t in 0.0f64..0.9) {
        let lhs = hyp2f1(a, b, c, t, false).unwrap();
        let rhs = (1.0 - t).powf(c - a - b) * hyp2f1(c - a, c - b, c, t, false).unwrap();
        prop_assert!(close(lhs, rhs, 1e-10), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn gauss_summation_is_the_limit(a in -1.0f64..2.0, b in -1.0f64..2.0, d in 0.6f64..3.0) {
        let c = a + b + d;
        prop_assume!(c > 0.3);
        let at_one = hyp2f1(a, b, c, 1.0, false).unwrap();
        let closed = gamma_ratio(&[c, d], &[c - a, c - b]);
        prop_assert!(close(at_one, closed, 1e-13));
        let near = hyp2f1(a, b, c, 1.0 - 1e-9, false).unwrap();
        prop_assert!((near - at_one).abs() <= 1e-4 * at_one.abs().max(1.0));
    }
}
