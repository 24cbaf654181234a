use hdirichlet_core::ballgeom::{laplacian_h_fd_richardson, moebius, BallPoint};
use hdirichlet_core::coefficients::{coeff_circ, coeff_quadrature};
use hdirichlet_core::harmonics::{radial_profile, zonal, zonal_unit, SolidHarmonic};
use hdirichlet_core::kernels::*;
use hdirichlet_core::quadrature::{jacobi_rule, zonal_sphere_rule};
use proptest::prelude::*;

fn point(n: usize, coords: &[f64]) -> BallPoint {
    let mut v = vec![0.0; n];
    v[..coords.len()].copy_from_slice(coords);
    BallPoint::new(v).unwrap()
}

/// A point with norm at most `bound`, from raw proptest draws.
fn scaled(raw: &[f64], bound: f64) -> BallPoint {
    let norm = raw.iter().map(|c| c * c).sum::<f64>().sqrt().max(1.0);
    BallPoint::new(raw.iter().map(|c| c * bound / norm).collect()).unwrap()
}

#[test]
fn profile_initial_conditions() {
    for n in 3..=7 {
        assert_eq!(f_profile(n, 0.0).unwrap(), 0.0);
        let h = 1e-6;
        let slope = f_profile(n, h).unwrap() / h;
        assert!((slope - 1.0).abs() < 1e-5, "n={n}: {slope}");
    }
    assert!(f_profile(3, 1.0).is_err());
}

#[test]
fn profile_closed_form_matches_the_integral() {
    for n in [3usize, 4, 5] {
        for &x in &[0.1, 0.5, 0.9] {
            let closed = f_profile(n, x).unwrap();
            let integral = f_profile_integral(n, x, 128).unwrap();
            assert!(
                (closed - integral).abs() < 1e-10 * integral.abs(),
                "n={n} x={x}: {closed} vs {integral}"
            );
        }
    }
}

#[test]
fn profile_derivative_matches_finite_differences() {
    for n in [3usize, 4, 5, 6] {
        for i in 1..=9 {
            let t = i as f64 / 10.0;
            let h = 1e-5;
            let fd = (f_profile(n, t + h).unwrap() - f_profile(n, t - h).unwrap()) / (2.0 * h);
            let exact = f_profile_derivative(n, t).unwrap();
            assert!((fd - exact).abs() < 1e-8 * exact.abs().max(1.0), "n={n} t={t}");
        }
    }
}

/// `(1-t)[(1-t)(2n f' + 4t f'') + 4(n-2) t f']`, the radial form of the
/// hyperbolic Laplacian of `f(|x|^2)`.
fn radial_laplacian(n: usize, t: f64) -> f64 {
    let nf = n as f64;
    let d1 = f_profile_derivative(n, t).unwrap();
    let h = 1e-5;
    let d2 = (f_profile_derivative(n, t + h).unwrap() - f_profile_derivative(n, t - h).unwrap()) / (2.0 * h);
    (1.0 - t) * ((1.0 - t) * (2.0 * nf * d1 + 4.0 * t * d2) + 4.0 * (nf - 2.0) * t * d1)
}

#[test]
fn profile_solves_the_radial_equation() {
    for n in [3usize, 4, 5, 6] {
        for i in 1..=9 {
            let t = i as f64 / 10.0;
            let r = radial_laplacian(n, t) - 2.0 * n as f64;
            assert!(r.abs() < 1e-6, "n={n} t={t}: residual {r}");
        }
    }
}

#[test]
fn hyperbolic_laplacian_of_the_profile_is_constant() {
    for n in [3usize, 4, 5] {
        for i in 0..10 {
            let r = 0.05 + 0.07 * i as f64;
            let x = point(n, &[r * 0.6, r * 0.8]);
            let lap =
                laplacian_h_fd_richardson(|p| f_profile(n, p.iter().map(|c| c * c).sum()).unwrap(), &x, 1e-3).unwrap();
            assert!(
                (lap - 2.0 * n as f64).abs() < 1e-4 * 2.0 * n as f64,
                "n={n} r={r}: {lap}"
            );
        }
    }
}

#[test]
fn kernel_is_h_harmonic_in_each_variable() {
    for n in [3usize, 4] {
        let y = point(n, &[0.2, -0.3, 0.1]);
        for i in 0..10 {
            let r = 0.05 + 0.06 * i as f64;
            let x = point(n, &[r * 0.8, 0.0, r * 0.6]);
            let lap = laplacian_h_fd_richardson(
                |p| {
                    dirichlet_kernel(n, &BallPoint::new(p.to_vec()).unwrap(), &y)
                        .unwrap()
                        .value
                },
                &x,
                1e-3,
            )
            .unwrap();
            let scale = dirichlet_kernel(n, &x, &x).unwrap().value.abs().max(1.0);
            assert!(lap.abs() < 1e-4 * scale, "n={n} r={r}: {lap}");
        }
    }
}

#[test]
fn kernel_special_values() {
    for n in [3usize, 4, 5] {
        let y = point(n, &[0.3, 0.1]);
        let o = BallPoint::origin(n).unwrap();
        assert_eq!(dirichlet_kernel(n, &o, &y).unwrap().value, 0.0);
        let x = point(n, &[0.1, 0.2, 0.4]);
        let k = dirichlet_kernel(n, &x, &x).unwrap().value;
        let want = dirichlet_constant(n) * f_profile(n, x.norm_sq()).unwrap();
        assert!((k - want).abs() < 1e-13 * want);
    }
    let x = point(4, &[0.3f64.sqrt()]);
    let k = dirichlet_kernel(4, &x, &x).unwrap().value;
    assert!((k - 3.0 * f_profile(4, 0.3).unwrap()).abs() < 1e-13);
}

#[test]
fn closed_form_matches_the_series() {
    let mut seed = 0x2545_f491_4f6c_dd1du64;
    let mut uniform = move || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        (seed >> 11) as f64 / (1u64 << 53) as f64
    };
    for n in [3usize, 4] {
        for _ in 0..20 {
            let mut draw = || {
                let v: Vec<f64> = (0..n).map(|_| 2.0 * uniform() - 1.0).collect();
                let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
                let r = 0.7 * uniform();
                BallPoint::new(v.iter().map(|c| c * r / norm).collect()).unwrap()
            };
            let x = draw();
            let y = draw();
            let closed = dirichlet_kernel(n, &x, &y).unwrap().value;
            let series = dirichlet_kernel_adaptive(n, &x, &y, 1e-8).unwrap();
            assert!(series.tail.unwrap() < 1e-8);
            assert!(
                (closed - series.value).abs() < 1e-6,
                "n={n}: {closed} vs {}",
                series.value
            );
        }
    }
}

#[test]
fn series_tail_shrinks_with_truncation() {
    let x = point(3, &[0.5, 0.2]);
    let y = point(3, &[-0.1, 0.6]);
    let mut last = f64::INFINITY;
    for m in [5, 10, 20, 40] {
        let t = dirichlet_kernel_series(3, &x, &y, m).unwrap().tail.unwrap();
        assert!(t < last);
        last = t;
    }
    let o = BallPoint::origin(3).unwrap();
    for m in [1, 5, 30] {
        assert_eq!(dirichlet_kernel_series(3, &o, &y, m).unwrap().value, 0.0);
    }
    let far = point(3, &[0.95]);
    assert!(dirichlet_kernel_series(3, &far, &far, 10).is_err());
}

#[test]
fn profiles_peak_at_the_origin() {
    // the tail bound uses sup S_m = S_m(0)
    for n in 3..=8 {
        for m in [1usize, 2, 5, 20, 60] {
            let top = radial_profile(n, m, 0.0).unwrap();
            for i in 1..=20 {
                let v = radial_profile(n, m, i as f64 / 20.0).unwrap();
                assert!(v.abs() <= top * (1.0 + 1e-12), "n={n} m={m}");
            }
        }
    }
}

#[test]
fn series_kernel_reproduces_solid_harmonics_under_the_dirichlet_pairing() {
    let n = 3;
    let x = point(n, &[0.35]);
    let r = 0.8;
    let rule = zonal_sphere_rule(n, 64).unwrap();
    for m0 in 1..=3 {
        let f = SolidHarmonic::axial(n, m0).unwrap();
        // pairing of the boundary component of y -> K(y, x) with Z_m0(., e1)
        let proj = rule.integrate(|u| {
            let y = BallPoint::new(vec![r * u, r * (1.0 - u * u).max(0.0).sqrt(), 0.0]).unwrap();
            dirichlet_kernel_series(n, &y, &x, 60).unwrap().value * zonal_unit(n, m0, u)
        });
        let boundary = proj / (r.powi(m0 as i32) * radial_profile(n, m0, r * r).unwrap());
        let pairing = coeff_circ(n, m0).unwrap() * boundary;
        let want = f.eval(x.coords()).unwrap();
        assert!(
            (pairing - want).abs() < 1e-6 * want.abs().max(1.0),
            "m0={m0}: {pairing} vs {want}"
        );
    }
}

#[test]
fn bergman_kernel_basics() {
    let mut cache = BergmanCoefficients::new(3, 0.5).unwrap();
    let o = BallPoint::origin(3).unwrap();
    let y = point(3, &[0.4, 0.3]);
    let k = bergman_kernel_series(&mut cache, &o, &y, 20).unwrap();
    assert!((k.value - 1.0).abs() < 1e-15);
    let mut seed = 7u64;
    for _ in 0..50 {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let a = (seed >> 33) as f64 / (1u64 << 31) as f64;
        let b = (seed & 0xffff) as f64 / 65536.0;
        let x = point(3, &[0.8 * a, 0.1 * b, -0.05]);
        let k = bergman_kernel_adaptive(&mut cache, &x, &x, 1e-10).unwrap();
        assert!(k.value > 0.0);
    }
    assert!(BergmanCoefficients::new(3, -1.0).is_err());
    assert!((cache.get(2).unwrap() - coeff_quadrature(3, 2, 0.5).unwrap().value().unwrap()).abs() < 1e-15);
}

#[test]
fn bergman_kernel_reproduces_a_degree_one_harmonic() {
    let (n, s) = (3usize, 0.0);
    let mut cache = BergmanCoefficients::new(n, s).unwrap();
    let x = point(n, &[0.2]);
    let f = SolidHarmonic::axial(n, 1).unwrap();
    // radial rule in t = |y|^2 for Gamma(n/2+s+1)/(Gamma(n/2)Gamma(s+1)) t^(n/2-1) (1-t)^s
    let radial = jacobi_rule(s, n as f64 / 2.0 - 1.0, 48).unwrap();
    let sphere = zonal_sphere_rule(n, 48).unwrap();
    let mass = radial.mass();
    let mut acc = 0.0;
    for (&t, &w) in radial.nodes.iter().zip(&radial.weights) {
        let r = t.sqrt();
        acc += w / mass
            * sphere.integrate(|u| {
                let y = BallPoint::new(vec![r * u, r * (1.0 - u * u).max(0.0).sqrt(), 0.0]).unwrap();
                let k = bergman_kernel_series(&mut cache, &x, &y, 40).unwrap().value;
                k * f.eval(y.coords()).unwrap()
            });
    }
    let want = f.eval(x.coords()).unwrap();
    assert!((acc - want).abs() < 1e-6, "{acc} vs {want}");
    let _ = zonal;
}

#[test]
fn transformation_law_trivial_cases() {
    for n in [3usize, 4] {
        let x = point(n, &[0.3, -0.2]);
        let y = point(n, &[0.1, 0.5, 0.2]);
        let o = BallPoint::origin(n).unwrap();
        assert_eq!(transform_check(n, &x, &y, &o).unwrap(), 0.0);
        // y = x: K(phi_a x, phi_a x) = K(x,x) - 2 K(x,a) + K(a,a)
        let a = point(n, &[-0.2, 0.1, 0.3]);
        let ax = moebius(&a, &x).unwrap();
        let k = |p: &BallPoint, q: &BallPoint| dirichlet_kernel(n, p, q).unwrap().value;
        let lhs = k(&ax, &ax);
        let rhs = k(&x, &x) - 2.0 * k(&x, &a) + k(&a, &a);
        assert!((lhs - rhs).abs() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_symmetric(raw_x in prop::array::uniform3(-1.0f64..1.0), raw_y in prop::array::uniform3(-1.0f64..1.0),
                           rx in 0.0f64..0.95, ry in 0.0f64..0.95) {
        let x = scaled(&raw_x, rx);
        let y = scaled(&raw_y, ry);
        let a = dirichlet_kernel(3, &x, &y).unwrap().value;
        let b = dirichlet_kernel(3, &y, &x).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-13 * a.abs().max(1.0));
    }

    #[test]
    fn transformation_law_holds(raw in prop::array::uniform9(-1.0f64..1.0), r in prop::array::uniform3(0.0f64..0.6)) {
        let x = scaled(&raw[0..3], r[0]);
        let y = scaled(&raw[3..6], r[1]);
        let a = scaled(&raw[6..9], r[2]);
        prop_assert!(transform_check(3, &x, &y, &a).unwrap() <= 1e-10);
    }

    #[test]
    fn series_kernel_is_symmetric(raw_x in prop::array::uniform4(-1.0f64..1.0), raw_y in prop::array::uniform4(-1.0f64..1.0),
                                  rx in 0.0f64..0.7, ry in 0.0f64..0.7) {
        let x = scaled(&raw_x, rx);
        let y = scaled(&raw_y, ry);
        let a = dirichlet_kernel_series(4, &x, &y, 30).unwrap().value;
        let b = dirichlet_kernel_series(4, &y, &x, 30).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }
}
