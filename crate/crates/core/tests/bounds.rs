use std::f64::consts::PI;

use approx::assert_relative_eq;
use bessel_bounds::bounds::*;
use bessel_bounds::zeros::{char_root, tau0, tau1};
use bessel_bounds::Error;
use proptest::prelude::*;

fn geo(n: u32, h0: f64) -> GeometrySpec {
    GeometrySpec::new(n, h0)
}

fn value(r: &BoundReport) -> f64 {
    r.value.expect("bound should carry a value")
}

/// Bisection oracle for `1 - x cot x = c` on `(0, pi)` (the n = 3 case of the
/// characteristic equation).
fn trig_root(c: f64) -> f64 {
    let g = |x: f64| 1.0 - x / x.tan() - c;
    let (mut lo, mut hi) = (1e-9, PI - 1e-12);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn quotient_three_dimensions() {
    let r = quotient_lower_bound(&geo(3, 1.0), 1.0).unwrap();
    let s = 1f64.sin();
    let expect = s / (s - 1f64.cos());
    assert_relative_eq!(value(&r), expect, max_relative = 1e-12);
    assert_relative_eq!(value(&r), 2.79402, max_relative = 1e-5);
    assert!(r.informative && !r.strict);
}

#[test]
fn quotient_small_lambda_limit() {
    let r = quotient_lower_bound(&geo(3, 1.0), 1e-8).unwrap();
    assert!((value(&r) - 3.0).abs() < 1e-3);
}

#[test]
fn quotient_near_and_past_first_zero() {
    let j01 = 2.404825557695773_f64;
    let r = quotient_lower_bound(&geo(2, 1.0), j01 * j01 - 1e-6).unwrap();
    assert!(value(&r) > 0.0 && value(&r) < 1e-5);
    assert!(r.warnings.is_empty());
    let r = quotient_lower_bound(&geo(2, 1.0), (j01 + 0.1).powi(2)).unwrap();
    assert!(value(&r) < 0.0);
    assert!(!r.informative);
    assert!(!r.warnings.is_empty());
}

#[test]
fn quotient_hypothesis_violation() {
    // j_{3/2,1} ~ 4.4934
    let e = quotient_lower_bound(&geo(3, 1.0), 4.5f64.powi(2)).unwrap_err();
    assert!(matches!(e, Error::HypothesisViolated(_)));
}

#[test]
fn isoperimetric_examples() {
    assert_eq!(value(&isoperimetric_bound(&geo(3, 2.0)).unwrap()), 6.0);
    assert_eq!(value(&isoperimetric_bound(&geo(5, 0.5)).unwrap()), 2.5);
    // unit ball in R^3: area / volume = 4 pi / (4 pi / 3)
    let ratio = (4.0 * PI) / (4.0 * PI / 3.0);
    assert_relative_eq!(value(&isoperimetric_bound(&geo(3, 1.0)).unwrap()), ratio);
}

#[test]
fn dirichlet_examples() {
    assert_relative_eq!(
        value(&dirichlet_faber_krahn(&geo(3, 1.0)).unwrap()),
        PI * PI,
        max_relative = 1e-13
    );
    assert_relative_eq!(
        value(&dirichlet_faber_krahn(&geo(2, 1.0)).unwrap()),
        5.78319,
        max_relative = 1e-5
    );
    assert_relative_eq!(
        value(&dirichlet_faber_krahn(&geo(3, 2.0)).unwrap()),
        4.0 * PI * PI,
        max_relative = 1e-13
    );
}

#[test]
fn robin_threshold_examples() {
    let r = robin_threshold_bound(&geo(3, 1.0), 1.0, PI / 2.0).unwrap();
    assert_relative_eq!(r.intermediates["alpha"], 1.0, max_relative = 1e-12);
    assert_relative_eq!(value(&r), PI * PI / 4.0, max_relative = 1e-14);

    let r = robin_threshold_bound(&geo(3, 1.0), 0.5, PI / 2.0).unwrap();
    assert!(r.value.is_none());
    assert!(r.explanation.is_some());

    let r = robin_threshold_bound(&geo(3, 1.0), 1.0, 1e-4).unwrap();
    assert!(value(&r) < 1e-7);
    assert!(r.intermediates["alpha"] < 1e-7);
}

#[test]
fn robin_threshold_rejects_large_tau0() {
    assert!(matches!(
        robin_threshold_bound(&geo(3, 1.0), 1.0, 3.5),
        Err(Error::Domain(_))
    ));
}

#[test]
fn robin_ball_examples() {
    let r = robin_ball_eigenvalue(3, 1.0, 1.0).unwrap();
    assert_relative_eq!(value(&r), PI * PI / 4.0, max_relative = 1e-13);
    let r = robin_ball_eigenvalue(3, 1.0, 1e6).unwrap();
    assert!(r.intermediates["x*"] > PI - 1e-2 && r.intermediates["x*"] < PI);
    let r = robin_ball_eigenvalue(3, 1.0, 3.0).unwrap();
    assert_relative_eq!(r.intermediates["x*"], trig_root(3.0), max_relative = 1e-12);
}

#[test]
fn dirac_examples() {
    let r = dirac_bound(&geo(3, 1.0), &CurvatureInputs::default()).unwrap();
    let t0 = trig_root(2.0);
    assert_relative_eq!(value(&r), 0.75 * t0 * t0, max_relative = 1e-12);
    assert_relative_eq!(value(&r), 3.08690, max_relative = 1e-5);
    assert!(r.strict);
    assert!(r.hypotheses.iter().any(|h| h.caller_asserted));

    let cur = CurvatureInputs {
        min_scalar: 4.0,
        ..Default::default()
    };
    let r = dirac_bound(&geo(3, 1e-6), &cur).unwrap();
    assert_relative_eq!(value(&r), 1.5, max_relative = 1e-9);

    let r = dirac_bound(&geo(4, 1.0), &CurvatureInputs::default()).unwrap();
    let t = char_root(4, 3.0).unwrap().root;
    assert_relative_eq!(value(&r), 4.0 / 6.0 * t * t, max_relative = 1e-14);
}

#[test]
fn mit_examples() {
    let c = |s: f64, im: f64| CurvatureInputs {
        min_scalar: s,
        im_lambda: im,
        ..Default::default()
    };
    assert_relative_eq!(value(&mit_bound(&geo(3, 1.0), &c(0.0, 0.5)).unwrap()), 1.5);
    assert_relative_eq!(value(&mit_bound(&geo(3, 1.0), &c(6.0, 0.0)).unwrap()), 2.25);
    assert_relative_eq!(value(&mit_bound(&geo(5, 2.0), &c(0.0, 1.0)).unwrap()), 10.0);
    assert!(mit_bound(&geo(3, 1.0), &c(0.0, -1.0)).is_err());
}

#[test]
fn yamabe_examples() {
    let r = yamabe_bound(&geo(3, 1.0), &CurvatureInputs::default()).unwrap();
    let t1 = trig_root(0.5);
    assert_relative_eq!(value(&r), 8.0 * t1 * t1, max_relative = 1e-12);
    assert_relative_eq!(value(&r), 10.8683, max_relative = 1e-5);

    let cur = CurvatureInputs {
        min_scalar: 2.0,
        ..Default::default()
    };
    let r = yamabe_bound(&geo(3, 1e-7), &cur).unwrap();
    assert_relative_eq!(value(&r), 2.0, max_relative = 1e-9);

    let cur = CurvatureInputs {
        min_scalar: 1.0,
        ..Default::default()
    };
    let r = yamabe_bound(&geo(4, 1.0), &cur).unwrap();
    let t = char_root(4, 1.0).unwrap().root;
    assert_relative_eq!(value(&r), 1.0 + 6.0 * t * t, max_relative = 1e-14);

    assert!(matches!(
        yamabe_bound(&geo(2, 1.0), &CurvatureInputs::default()),
        Err(Error::Dimension(_))
    ));
}

#[test]
fn dirac_conformal_examples() {
    let r = dirac_conformal_bound(&geo(3, 1.0), &CurvatureInputs::default()).unwrap();
    assert_relative_eq!(value(&r), 4.07560, max_relative = 1e-5);
    assert!(value(&r) > r.intermediates["dirac_bound"]);
    assert!(r.strict && r.warnings.is_empty());

    let cur = CurvatureInputs {
        min_scalar: -1.0,
        ..Default::default()
    };
    let r = dirac_conformal_bound(&geo(3, 1.0), &cur).unwrap();
    assert_relative_eq!(value(&r), 3.70060, max_relative = 1e-5);
    assert!(r.informative);

    let cur = CurvatureInputs {
        min_scalar: 8.0 / 3.0,
        ..Default::default()
    };
    let r = dirac_conformal_bound(&geo(3, 1e-7), &cur).unwrap();
    assert_relative_eq!(value(&r), 1.0, max_relative = 1e-9);
}

#[test]
fn pform_examples() {
    let cur = CurvatureInputs {
        p: 1,
        sigma_p: 1.0,
        tau: 0.1,
        ..Default::default()
    };
    let r = pform_bound(&geo(3, 1.0), &cur, PI / 2.0).unwrap();
    assert_relative_eq!(value(&r), PI * PI / 8.0, max_relative = 1e-14);
    assert_relative_eq!(r.intermediates["threshold"], -0.5, max_relative = 1e-12);
    assert!(r.strict);
    // comparison with n^2 sigma^2 / (8 p^2)
    assert!(value(&r) > 9.0 / 8.0);

    let cur = CurvatureInputs {
        p: 2,
        sigma_p: 2.0,
        tau: 1.0,
        ..Default::default()
    };
    let r = pform_bound(&geo(4, 1.0), &cur, 1.0).unwrap();
    assert_relative_eq!(value(&r), 0.5, max_relative = 1e-14);
    let alpha = r.intermediates["alpha"];
    assert_relative_eq!(r.intermediates["threshold"], 2.0 * (alpha / 4.0 - 1.0));
}

#[test]
fn pform_ball_examples() {
    let c = |n: u32, p: u32, s: f64| {
        let cur = CurvatureInputs {
            p,
            sigma_p: s,
            tau: 1.0,
            ..Default::default()
        };
        value(&pform_ball_comparison(&geo(n, 1.0), &cur).unwrap())
    };
    assert_relative_eq!(c(3, 1, 1.0), PI * PI / 8.0, max_relative = 1e-13);
    assert_relative_eq!(c(3, 2, 2.0), PI * PI / 8.0, max_relative = 1e-13);
    let ball = value(&robin_ball_eigenvalue(2, 1.0, 1.0).unwrap());
    assert_relative_eq!(c(2, 1, 1.0), ball / 2.0, max_relative = 1e-15);
}

#[test]
fn gap_examples() {
    let c = |p: u32, inf: f64| CurvatureInputs {
        p,
        inf_w_minus_t: inf,
        ..Default::default()
    };
    assert_eq!(value(&gap_bound(&c(2, 3.0)).unwrap()), 1.5);
    let r = gap_bound(&c(1, 0.0)).unwrap();
    assert_eq!(value(&r), 0.0);
    assert!(r.warnings[0].contains("Euclidean p-convex"));
    let r = gap_bound(&c(3, -6.0)).unwrap();
    assert_eq!(value(&r), -2.0);
    assert!(!r.informative);
}

#[test]
fn gallot_meyer_examples() {
    let cur = CurvatureInputs {
        p: 2,
        gamma: 1.0,
        sigma_p: 0.0,
        tau: 1.0,
        ..Default::default()
    };
    let r = gallot_meyer_bound(&geo(4, 1.0), &cur).unwrap();
    assert_eq!(r.intermediates["c"], 3.0);
    assert_relative_eq!(value(&r), 6.0);

    let cur = CurvatureInputs {
        p: 1,
        gamma: 1.0,
        sigma_p: 1.0,
        tau: 0.1,
        ..Default::default()
    };
    let r = gallot_meyer_bound(&geo(3, 1.0), &cur).unwrap();
    assert_eq!(r.intermediates["branch"], 1.0);
    assert_relative_eq!(value(&r), 3.0);

    let cur = CurvatureInputs {
        p: 1,
        gamma: 1.0,
        sigma_p: -2.0,
        tau: -3.5,
        nu_1p: 1.0,
        ..Default::default()
    };
    let r = gallot_meyer_bound(&geo(3, 1.0), &cur).unwrap();
    assert_eq!(r.intermediates["branch"], 2.0);
    assert_relative_eq!(r.intermediates["threshold"], 3.0);
    assert_relative_eq!(r.intermediates["denominator"], 8.0 / 3.0);
    assert_relative_eq!(value(&r), -1.875);
    assert!(!r.informative);
}

#[test]
fn gallot_meyer_denominator() {
    let cur = CurvatureInputs {
        p: 1,
        gamma: 1.0,
        sigma_p: -0.1,
        tau: -5.0,
        nu_1p: -3.0,
        ..Default::default()
    };
    assert!(matches!(
        gallot_meyer_bound(&geo(3, 1.0), &cur),
        Err(Error::DenominatorNonpositive(_))
    ));
}

#[test]
fn cotangent_examples() {
    let g = geo(3, 0.0).with_radius(0.5);
    let r = cotangent_bound(&g, 1.0).unwrap();
    assert_relative_eq!(value(&r), 1.0 / 0.5f64.tan(), max_relative = 1e-15);
    assert!(matches!(
        cotangent_bound(&g, 16.0),
        Err(Error::HypothesisViolated(_))
    ));
}

#[test]
fn ball_consistency() {
    for n in 2..=6 {
        for &tau in &[0.1, 1.0, 10.0] {
            let ball = robin_ball_eigenvalue(n, 1.0, tau).unwrap();
            let t0 = ball.intermediates["x*"];
            let thr = robin_threshold_bound(&geo(n, 1.0), tau, t0).unwrap();
            assert!((value(&thr) - value(&ball)).abs() <= 1e-9 * value(&ball));
            assert!((thr.intermediates["alpha"] - tau).abs() <= 1e-9 * tau);
        }
    }
}

#[test]
fn conformal_dominates_direct() {
    for n in 3..=50 {
        for &h0 in &[0.5, 1.0, 2.0] {
            for &s in &[0.0, 1.0] {
                let cur = CurvatureInputs {
                    min_scalar: s,
                    ..Default::default()
                };
                let a = value(&dirac_conformal_bound(&geo(n, h0), &cur).unwrap());
                let b = value(&dirac_bound(&geo(n, h0), &cur).unwrap());
                assert!(a > b, "n={n} h0={h0} s={s}");
            }
        }
        let nf = f64::from(n);
        let (t0, t1) = (tau0(n).unwrap(), tau1(n).unwrap());
        assert!(nf * t1 * t1 / (nf - 2.0) > nf * t0 * t0 / (2.0 * (nf - 1.0)));
    }
}

#[test]
fn robin_ball_monotone_and_below_dirichlet() {
    for n in 2..=5 {
        let dir = value(&dirichlet_faber_krahn(&geo(n, 1.0)).unwrap());
        let mut prev = 0.0;
        for i in 0..=30 {
            let tau = 0.1 * 1000f64.powf(i as f64 / 30.0);
            let v = value(&robin_ball_eigenvalue(n, 1.0, tau).unwrap());
            assert!(v > prev && v < dir, "n={n} tau={tau}");
            prev = v;
        }
    }
}

#[test]
fn airy_chain_holds() {
    for n in 3..=20 {
        let c = airy_chain(n, 1.0).unwrap();
        assert!(c.holds, "n={n} {:?}", c.terms);
        assert!(c.tau0 > f64::from(n) / 2.0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn robin_ball_scales_quadratically(n in 2u32..7, h0 in 0.2f64..5.0, tau in 0.05f64..20.0, t in 0.3f64..3.0) {
        let a = value(&robin_ball_eigenvalue(n, h0, tau).unwrap());
        let b = value(&robin_ball_eigenvalue(n, t * h0, t * tau).unwrap());
        prop_assert!((b - t * t * a).abs() <= 1e-10 * b);
    }

    #[test]
    fn quotient_bound_is_positive_before_first_zero(n in 2u32..8, f in 0.01f64..0.99) {
        let r = quotient_lower_bound(&geo(n, 1.0), 1.0).unwrap();
        prop_assert!(r.value.is_some());
        let jm = r.intermediates["j_(n/2-1,1)"];
        let x = f * jm;
        let r = quotient_lower_bound(&geo(n, 1.0), x * x).unwrap();
        prop_assert!(value(&r) > 0.0);
        prop_assert!(value(&r) <= f64::from(n) + 1e-9);
    }
}
