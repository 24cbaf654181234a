use hdirichlet_core::ballgeom::*;
use proptest::prelude::*;

fn point(coords: Vec<f64>) -> Option<BallPoint> {
    let r2: f64 = coords.iter().map(|c| c * c).sum();
    (r2 < 0.9 * 0.9).then(|| BallPoint::new(coords).unwrap())
}

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.55f64..0.55, n)
}

#[test]
fn points_outside_the_ball_are_rejected() {
    assert!(BallPoint::new(vec![0.6, 0.8, 0.0]).is_err());
    assert!(BallPoint::new(vec![f64::NAN, 0.0, 0.0]).is_err());
    assert!(BallPoint::on_axis(3, 1.0).is_err());
}

#[test]
fn laplacian_of_a_coordinate_function() {
    // Delta x_1 = 0 and <x, grad x_1> = x_1
    let n = 4;
    let x = BallPoint::new(vec![0.3, -0.2, 0.1, 0.25]).unwrap();
    let lap = laplacian_h_fd_richardson(|p| p[0], &x, DEFAULT_STEP).unwrap();
    let expected = (1.0 - x.norm_sq()) * 2.0 * (n as f64 - 2.0) * 0.3;
    assert!((lap - expected).abs() < 1e-6 * expected.abs());
}

#[test]
fn mean_value_of_an_h_harmonic_function() {
    // Euclidean-harmonic functions are not H-harmonic in general, but constants are
    let a = BallPoint::new(vec![0.2, 0.1, -0.3]).unwrap();
    assert!(mean_value_residual(|_| 2.5, &a, 0.5).unwrap().abs() < 1e-13);
}

proptest! {
    #[test]
    fn moebius_is_an_involution(a in coords(3), x in coords(3)) {
        let (Some(a), Some(x)) = (point(a), point(x)) else { return Ok(()); };
        let back = moebius(&a, &moebius(&a, &x).unwrap()).unwrap();
        for (u, v) in back.coords().iter().zip(x.coords()) {
            prop_assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn moebius_exchanges_zero_and_a(a in coords(4)) {
        let Some(a) = point(a) else { return Ok(()); };
        let zero = BallPoint::origin(4).unwrap();
        let image = moebius(&a, &zero).unwrap();
        let back = moebius(&a, &a).unwrap();
        for i in 0..4 {
            prop_assert!((image.coords()[i] - a.coords()[i]).abs() < 1e-15);
            prop_assert!(back.coords()[i].abs() < 1e-15);
        }
    }

    #[test]
    fn moebius_norm_identity(a in coords(3), x in coords(3)) {
        let (Some(a), Some(x)) = (point(a), point(x)) else { return Ok(()); };
        let y = moebius(&a, &x).unwrap();
        let b = bracket(&x, &a).unwrap();
        let rhs = (1.0 - a.norm_sq()) * (1.0 - x.norm_sq()) / (b * b);
        prop_assert!((1.0 - y.norm_sq() - rhs).abs() < 1e-13);
    }

    #[test]
    fn bracket_is_symmetric(a in coords(5), x in coords(5)) {
        let (Some(a), Some(x)) = (point(a), point(x)) else { return Ok(()); };
        prop_assert!((bracket(&x, &a).unwrap() - bracket(&a, &x).unwrap()).abs() < 1e-15);
    }
}
