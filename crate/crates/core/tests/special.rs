use std::f64::consts::PI;

use bessel_bounds::special::*;
use bessel_bounds::zeros::{bessel_zero, ZeroRequest};
use bessel_bounds::{BesselOrder, Error};
use proptest::prelude::*;

fn order(nu: f64) -> BesselOrder {
    BesselOrder::new(nu).unwrap()
}

fn grid(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
}

/// Spherical Bessel closed forms written as `J_nu(x)`.
fn half_integer_closed_form(nu: f64, x: f64) -> f64 {
    let c = (2.0 / (PI * x)).sqrt();
    let (s, co) = x.sin_cos();
    match (2.0 * nu) as i32 {
        1 => c * s,
        -1 => c * co,
        3 => c * (s / x - co),
        -3 => c * (-co / x - s),
        5 => c * ((3.0 / (x * x) - 1.0) * s - 3.0 * co / x),
        _ => unreachable!(),
    }
}

#[test]
fn recurrence_closure() {
    for i in 0..=20 {
        let nu = 0.5 * i as f64;
        for x in grid(0.1, 30.0, 300) {
            let (jm, j, jp) = (
                bessel_j(nu - 1.0, x).unwrap(),
                bessel_j(nu, x).unwrap(),
                bessel_j(nu + 1.0, x).unwrap(),
            );
            let scale = jm.abs().max(j.abs()).max(jp.abs());
            let r = jp - 2.0 * nu / x * j + jm;
            assert!(r.abs() <= 1e-10 * scale, "nu={nu} x={x} r={r:e}");
        }
    }
}

#[test]
fn half_integer_exactness() {
    for &nu in &[0.5, -0.5, 1.5, -1.5, 2.5] {
        for x in grid(0.1, 30.0, 500) {
            let v = bessel_j(nu, x).unwrap();
            let c = half_integer_closed_form(nu, x);
            // relative to the local amplitude so that zeros are not singled out
            let amp = (2.0 / (PI * x)).sqrt().max(c.abs());
            assert!((v - c).abs() <= 1e-10 * amp, "nu={nu} x={x}");
        }
    }
}

#[test]
fn half_integer_y_matches_reflection() {
    for x in grid(0.2, 30.0, 200) {
        // Y_{n+1/2} = (-1)^(n+1) J_{-n-1/2}
        let y = bessel_y(0.5, x).unwrap();
        assert!((y + half_integer_closed_form(-0.5, x)).abs() < 1e-12);
        let y = bessel_y(1.5, x).unwrap();
        let want = half_integer_closed_form(-1.5, x);
        assert!((y - want).abs() <= 1e-10 * want.abs().max(1.0));
    }
}

#[test]
fn wronskian_and_lommel_residuals() {
    for i in -20..=20 {
        let nu = 0.5 * i as f64;
        for x in grid(0.05, 50.0, 120) {
            let (a, b) = lommel_residuals(order(nu), x).unwrap();
            let tol = 1e-10 * (1.0_f64).max(1.0 / x);
            assert!(a <= tol && b <= tol, "nu={nu} x={x} ({a:e}, {b:e})");
        }
    }
}

#[test]
fn derivative_forms_agree() {
    for i in 0..=20 {
        let nu = 0.5 * i as f64;
        for x in grid(0.1, 30.0, 200) {
            let f = j_derivative_forms(order(nu), x).unwrap();
            let scale = f.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(
                bessel_j(nu - 1.0, x).unwrap().abs(),
            );
            for a in 0..3 {
                for b in a + 1..3 {
                    assert!((f[a] - f[b]).abs() <= 1e-10 * scale, "nu={nu} x={x}");
                }
            }
        }
    }
}

#[test]
fn derivative_matches_finite_difference() {
    let h = 1e-6;
    let fd = (bessel_j(3.0, 5.0 + h).unwrap() - bessel_j(3.0, 5.0 - h).unwrap()) / (2.0 * h);
    assert!((eval_j_derivative(order(3.0), 5.0).unwrap() - fd).abs() < 1e-7);
    let j01 = bessel_zero(ZeroRequest::new(0.0, 1).unwrap()).unwrap();
    let d = eval_j_derivative(order(0.0), j01).unwrap();
    assert!((d + 0.519147).abs() < 1e-6);
}

#[test]
fn quotients_are_monotone() {
    for i in 0..=10 {
        let nu = 0.5 * i as f64;
        let jz = bessel_zero(ZeroRequest::new(nu, 1).unwrap()).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in 1..1000 {
            let x = jz * k as f64 / 1000.0;
            let q = ratio_next_over_current(order(nu), x).unwrap();
            assert!(q > prev, "nu={nu} x={x}");
            prev = q;
        }
    }
}

#[test]
fn y_over_j_increases_between_zeros() {
    for i in 0..=6 {
        let nu = 0.5 * i as f64;
        let jz = bessel_zero(ZeroRequest::new(nu, 1).unwrap()).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for k in 1..1000 {
            let x = 0.05 * jz + 0.9 * jz * k as f64 / 1000.0;
            let q = bessel_y(nu, x).unwrap() / bessel_j(nu, x).unwrap();
            assert!(q > prev, "nu={nu} x={x}");
            prev = q;
        }
    }
}

// Reference values from a 40-digit evaluation. Near half-integer orders
// cos(nu pi) is small and must keep its relative accuracy.
#[test]
fn y_near_half_integer_orders() {
    for (nu, x, want) in [
        (-6.500216531316744, 0.05, 1616943830.66246),
        (-5.500216531316744, 0.05, -7_349_640.929_815_537),
        (-2.4999, 1.3, 0.090_168_721_078_483_34),
        (-9.50001, 0.7, -25_956.471_719_672_26),
        (-0.50003, 2.0, 0.513_004_221_991_765_4),
        (3.49998, 0.2, -3_358.429_889_180_214),
    ] {
        let got = bessel_y(nu, x).unwrap();
        assert!(((got - want) / want).abs() < 1e-14, "Y_{nu}({x}) = {got:e}, want {want:e}");
    }
}

#[test]
fn small_argument_limit() {
    for i in 0..=10 {
        let nu = 0.5 * i as f64;
        let x = 1e-4;
        let v = x * bessel_j(nu, x).unwrap() / bessel_j(nu + 1.0, x).unwrap();
        let want = 2.0 * (nu + 1.0);
        assert!(((v - want) / want).abs() < 1e-6);
    }
}

#[test]
fn value_metadata() {
    let v = eval_j(order(2.0), 3.0).unwrap();
    assert!(v.terms_used >= 1);
    assert!(v.abs_err_estimate >= 0.0 && v.abs_err_estimate <= 1e-12 * v.value.abs().max(1e-300) * 10.0);
    assert_eq!(v.x, 3.0);
}

#[test]
fn error_paths() {
    assert!(matches!(BesselOrder::new(200.5), Err(Error::OrderOutOfRange(_))));
    assert!(matches!(bessel_j(1.0, -1.0), Err(Error::Domain(_))));
    assert!(matches!(bessel_j(-0.5, 0.0), Err(Error::Domain(_))));
    assert!(bessel_y(1.0, 0.0).is_err());
    assert_eq!(bessel_j(0.0, 0.0).unwrap(), 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn wronskian_random(nu in -2.5f64..10.0, x in 0.05f64..50.0) {
        let (a, b) = lommel_residuals(order(nu), x).unwrap();
        let tol = 1e-10 * (1.0_f64).max(1.0 / x);
        prop_assert!(a <= tol, "first {a:e}");
        prop_assert!(b <= tol, "second {b:e}");
    }

    // Below nu = -3 and for small x, J_nu and Y_nu share the dominant x^nu
    // term and the products in the Wronskian exceed 2/(pi x) by up to 1e25,
    // so the residual of correctly rounded inputs is eps * |Y_nu J_{nu+1}|.
    #[test]
    fn wronskian_negative_orders_at_rounding_floor(nu in -10.0f64..-2.5, x in 0.05f64..50.0) {
        let (a, b) = lommel_residuals(order(nu), x).unwrap();
        let tol = 1e-10 * (1.0_f64).max(1.0 / x);
        prop_assert!(a <= tol, "first {a:e}");
        let p = (bessel_y(nu, x).unwrap() * bessel_j(nu + 1.0, x).unwrap()).abs()
            .max((bessel_y(nu + 1.0, x).unwrap() * bessel_j(nu, x).unwrap()).abs());
        prop_assert!(b <= tol.max(64.0 * f64::EPSILON * p), "second {b:e}, products {p:e}");
    }

    #[test]
    fn recurrence_random(nu in 0.0f64..20.0, x in 0.1f64..40.0) {
        let jm = bessel_j(nu - 1.0, x).unwrap();
        let j = bessel_j(nu, x).unwrap();
        let jp = bessel_j(nu + 1.0, x).unwrap();
        let scale = jm.abs().max(j.abs()).max(jp.abs());
        prop_assert!((jp - 2.0 * nu / x * j + jm).abs() <= 1e-10 * scale);
    }

    #[test]
    fn integer_reflection(n in 0i32..30, x in 0.1f64..40.0) {
        let s = if n % 2 == 0 { 1.0 } else { -1.0 };
        let nf = f64::from(n);
        prop_assert_eq!(bessel_j(-nf, x).unwrap(), s * bessel_j(nf, x).unwrap());
        prop_assert_eq!(bessel_y(-nf, x).unwrap(), s * bessel_y(nf, x).unwrap());
    }
}
