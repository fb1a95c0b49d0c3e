use std::f64::consts::PI;

use bessel_bounds::bounds::robin_ball_eigenvalue;
use bessel_bounds::radial::*;
use bessel_bounds::zeros::{bessel_zero, char_root, ZeroRequest};
use bessel_bounds::Error;
use proptest::prelude::*;

fn solve(n: u32, radius: f64, bc: Bc, grid: usize) -> RadialSpectrum {
    solve_lowest(&RadialProblem::new(n, radius, bc, grid).unwrap()).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn dirichlet_three_ball() {
    let s = solve(3, 1.0, Bc::Dirichlet, 4096);
    assert!(rel(s.lambda_1_extrapolated, PI * PI) < 1e-6);
}

#[test]
fn robin_three_ball_unit_parameter() {
    let s = solve(3, 1.0, Bc::Robin { tau: 1.0 }, 4096);
    assert!(rel(s.lambda_1_extrapolated, PI * PI / 4.0) < 1e-6);
    assert!((s.lambda_1_extrapolated - 2.467401).abs() < 1e-6);
}

#[test]
fn dirichlet_disk_matches_first_zero() {
    let s = solve(2, 1.0, Bc::Dirichlet, 4096);
    let j = bessel_zero(ZeroRequest::new(0.0, 1).unwrap()).unwrap();
    assert!(rel(s.lambda_1_extrapolated, j * j) < 1e-6);
    assert!((s.lambda_1_extrapolated - 5.783186).abs() < 1e-6);
}

#[test]
fn dirichlet_in_higher_dimensions_and_radii() {
    for n in 2..=8u32 {
        for &radius in &[0.5, 2.0] {
            let j = bessel_zero(ZeroRequest::new(f64::from(n) / 2.0 - 1.0, 1).unwrap()).unwrap();
            let exact = (j / radius).powi(2);
            let s = solve(n, radius, Bc::Dirichlet, 1024);
            assert!(rel(s.lambda_1_extrapolated, exact) < 1e-6, "n={n} R={radius}");
        }
    }
}

#[test]
fn neumann_gives_constants() {
    let s = solve(4, 1.0, Bc::Neumann, 256);
    assert!(s.lambda_1.abs() < 1e-10);
    assert!(s.eigenvector.iter().all(|u| (u - 1.0).abs() < 1e-8));
}

#[test]
fn second_order_convergence() {
    let targets = [
        (3u32, Bc::Dirichlet, PI * PI),
        (3, Bc::Robin { tau: 1.0 }, PI * PI / 4.0),
        (2, Bc::Dirichlet, 2.404825557695773_f64.powi(2)),
    ];
    for (n, bc, exact) in targets {
        let a = solve(n, 1.0, bc, 256);
        let b = solve(n, 1.0, bc, 512);
        let observed = ((a.lambda_1 - exact) / (b.lambda_1 - exact)).abs().log2();
        assert!((1.8..=2.2).contains(&observed), "{bc:?}: {observed}");
        assert!((1.8..=2.2).contains(&a.order_estimate));
    }
}

#[test]
fn first_eigenvector_is_positive() {
    for bc in [Bc::Dirichlet, Bc::Neumann, Bc::Robin { tau: 3.0 }] {
        let s = solve(3, 1.0, bc, 512);
        assert!(s.eigenvector.iter().all(|u| *u > 0.0), "{bc:?}");
    }
}

#[test]
fn discrete_robin_flux_identity() {
    for (n, tau) in [(3u32, 1.0), (2, 0.5), (5, 4.0)] {
        let radius = 1.0_f64;
        let s = solve(n, radius, Bc::Robin { tau }, 4096);
        let volume: f64 = s.eigenvector.iter().zip(&s.weights).map(|(u, w)| u * w).sum();
        let boundary = tau * s.eigenvector.last().unwrap() * radius.powi(n as i32 - 1);
        assert!(rel(s.lambda_1 * volume, boundary) < 0.02);
    }
}

#[test]
fn robin_sweep_examples() {
    let rows = robin_sweep(3, 1.0, &[0.01, 1.0, 100.0], 4096).unwrap();
    assert!(rows[0].1 < rows[1].1 && rows[1].1 < rows[2].1);
    assert!(rel(rows[2].1, PI * PI) < 0.05);

    let tiny = robin_sweep(3, 1.0, &[1e-6], 512).unwrap();
    assert!(tiny[0].1 <= 1e-5 && tiny[0].1 > 0.0);
}

#[test]
fn robin_sweep_matches_root_characterization() {
    for n in [2u32, 3, 4, 6] {
        let radius = 1.5;
        let jz = bessel_zero(ZeroRequest::new(f64::from(n) / 2.0 - 1.0, 1).unwrap()).unwrap();
        let taus = [0.1, 0.5, 1.0, 3.0, 10.0];
        let rows = robin_sweep(n, radius, &taus, 1024).unwrap();
        for (tau, l) in rows {
            assert!(l.sqrt() * radius < jz);
            let x = char_root(n, tau * radius).unwrap().root;
            assert!(rel(l, (x / radius).powi(2)) < 1e-6, "n={n} tau={tau}");
            let closed = robin_ball_eigenvalue(n, 1.0 / radius, tau).unwrap().value.unwrap();
            assert!(rel(l, closed) < 1e-6);
        }
    }
}

#[test]
fn neumann_robin_dirichlet_ordering() {
    for n in [2u32, 3, 5] {
        let neumann = solve(n, 1.0, Bc::Neumann, 512).lambda_1_extrapolated;
        let dirichlet = solve(n, 1.0, Bc::Dirichlet, 512).lambda_1_extrapolated;
        for tau in [0.1, 1.0, 10.0] {
            let l = solve(n, 1.0, Bc::Robin { tau }, 512).lambda_1_extrapolated;
            assert!(neumann <= l && l <= dirichlet, "n={n} tau={tau}");
        }
    }
}

#[test]
fn rejects_bad_problems() {
    assert!(matches!(
        RadialProblem::new(3, 1.0, Bc::Dirichlet, 10),
        Err(Error::DegenerateGrid(_))
    ));
    assert!(matches!(
        RadialProblem::new(3, 0.0, Bc::Dirichlet, 100),
        Err(Error::DegenerateGrid(_))
    ));
    assert!(RadialProblem::new(3, 1.0, Bc::Robin { tau: -1.0 }, 100).is_err());
    assert!(robin_sweep(3, 1.0, &[1.0, 0.5], 100).is_err());
}

#[test]
fn csv_exports() {
    let s = solve(3, 1.0, Bc::Dirichlet, 64);
    let mut buf = Vec::new();
    write_eigenvector_csv(&s, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    assert!(text.starts_with("r,u\n"));
    assert_eq!(text.lines().count(), s.grid.len() + 1);

    let mut buf = Vec::new();
    write_sweep_csv(&[(1.0, 2.0)], &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap().lines().count(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    // lambda_1(R; tau) = lambda_1(1; tau R) / R^2
    #[test]
    fn robin_scaling(n in 2u32..6, radius in 0.3f64..3.0, tau in 0.05f64..20.0) {
        let a = solve(n, radius, Bc::Robin { tau }, 256).lambda_1_extrapolated;
        let b = solve(n, 1.0, Bc::Robin { tau: tau * radius }, 256).lambda_1_extrapolated;
        prop_assert!(rel(a * radius * radius, b) < 1e-9);
    }
}
