//! Positive zeros of `J_nu` and roots of the characteristic equation
//! `x J_{n/2}(x) / J_{n/2-1}(x) = c`.
//!
//! Zeros are found one after another: a sign scan with a step well below
//! the minimal zero spacing isolates each zero, bisection shrinks the
//! bracket and Newton's method polishes it. McMahon's estimate only serves
//! as a guard against a runaway scan.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{eval_j, eval_j_derivative, near_positive_zero, BesselOrder, POLE_GUARD};

/// First negative zero of the Airy function `Ai`.
pub const AIRY_A1: f64 = -2.338_107_410_459_767;

/// Number of explicit zeros used by the quotient series.
pub const SERIES_ZEROS: usize = 200;

const SCAN_STEP: f64 = 0.5;
const BISECT_WIDTH: f64 = 1.0e-6;
const MAX_NEWTON: usize = 50;

/// The `k`-th positive zero of `J_nu`, `k >= 1`, `nu >= -1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroRequest {
    pub nu: BesselOrder,
    pub k: usize,
}

impl ZeroRequest {
    pub fn new(nu: f64, k: usize) -> Result<Self> {
        let nu = BesselOrder::new(nu)?;
        if k == 0 {
            return Err(Error::InvalidInput("zero index k must be >= 1".into()));
        }
        if nu.value() < -1.0 {
            return Err(Error::Domain(format!(
                "zeros are supported for nu >= -1, got {}",
                nu.value()
            )));
        }
        Ok(Self { nu, k })
    }
}

/// Leading McMahon term `(k + nu/2 - 1/4) pi`.
pub fn mcmahon(nu: f64, k: usize) -> f64 {
    (k as f64 + 0.5 * nu - 0.25) * PI
}

/// Lower bound `nu - a_1 nu^(1/3) / 2^(1/3)` for `j_{nu,1}`, `nu >= 0`.
pub fn airy_floor(nu: f64) -> f64 {
    nu - AIRY_A1 * nu.cbrt() / 2f64.cbrt()
}

fn j_at(nu: BesselOrder, x: f64) -> Result<f64> {
    Ok(eval_j(nu, x)?.value)
}

/// `j_{nu,k}`.
pub fn bessel_zero(req: ZeroRequest) -> Result<f64> {
    let zs = bessel_zeros(req.nu.value(), req.k)?;
    Ok(zs[req.k - 1])
}

/// The first `count` positive zeros of `J_nu`, increasing.
pub fn bessel_zeros(nu: f64, count: usize) -> Result<Vec<f64>> {
    let req = ZeroRequest::new(nu, count.max(1))?;
    let order = req.nu;
    let mut zeros = Vec::with_capacity(count);
    // J_nu > 0 on (0, j_{nu,1}) for nu > -1; J_{-1} = -J_1 flips the sign.
    let mut x = if nu > 0.0 {
        airy_floor(nu).max(1.0e-3)
    } else {
        1.0e-3
    };
    let mut fx = j_at(order, x)?;
    for k in 1..=count {
        let guard = mcmahon(nu.max(0.0), k) + 2.0 * PI;
        let (lo, hi, flo) = loop {
            let next = x + SCAN_STEP;
            if next > guard {
                return Err(Error::BracketFailure { nu, k });
            }
            let fnext = j_at(order, next)?;
            if fnext == 0.0 {
                break (next, next, 0.0);
            }
            if fx != 0.0 && fx.signum() != fnext.signum() {
                break (x, next, fx);
            }
            x = next;
            fx = fnext;
        };
        let root = if lo == hi {
            lo
        } else {
            refine(|t| j_at(order, t), |t| eval_j_derivative(order, t), lo, hi, flo)?
        };
        zeros.push(root);
        // restart the scan just past the root, on the far side of the sign change
        x = root + 1.0e-3 * SCAN_STEP;
        fx = j_at(order, x)?;
        if fx == 0.0 {
            x += 1.0e-3 * SCAN_STEP;
            fx = j_at(order, x)?;
        }
    }
    Ok(zeros)
}

/// Bisection down to `BISECT_WIDTH`, then safeguarded Newton.
fn refine(
    f: impl Fn(f64) -> Result<f64>,
    df: impl Fn(f64) -> Result<f64>,
    mut lo: f64,
    mut hi: f64,
    mut flo: f64,
) -> Result<f64> {
    while hi - lo > BISECT_WIDTH {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..MAX_NEWTON {
        let fx = f(x)?;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x)?;
        let mut next = x - fx / d;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Ok(next);
        }
        x = next;
    }
    Ok(x)
}

/// Root of `x J_{n/2}(x) / J_{n/2-1}(x) = c` on `(0, j_{n/2-1,1})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CharRoot {
    pub n: u32,
    pub c: f64,
    pub root: f64,
    pub bracket: (f64, f64),
    /// `g(root)`, the residual of the characteristic equation.
    pub residual: f64,
}

/// `(x J_{n/2}/J_{n/2-1}, J_{n/2}/J_{n/2-1})` at `x`, guarded against the pole.
fn char_quotient(nu: BesselOrder, x: f64) -> Result<(f64, f64)> {
    let lower = nu.shifted(-1.0)?;
    if near_positive_zero(lower, x)? {
        return Err(Error::NearPole {
            nu: lower.value(),
            x,
            guard: POLE_GUARD,
        });
    }
    let q = j_at(nu, x)? / j_at(lower, x)?;
    Ok((x * q, q))
}

fn check_dimension(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Dimension(format!("dimension n = {n} must be >= 2")));
    }
    if f64::from(n) / 2.0 > crate::special::MAX_ORDER {
        return Err(Error::Dimension(format!(
            "dimension n = {n} exceeds the supported Bessel order range"
        )));
    }
    Ok(())
}

/// Solves `g(x) = x J_{n/2}(x)/J_{n/2-1}(x) - c = 0` on `(0, j_{n/2-1,1})`,
/// where `g` increases from `-c` to `+inf`.
pub fn char_root(n: u32, c: f64) -> Result<CharRoot> {
    check_dimension(n)?;
    if !c.is_finite() {
        return Err(Error::InvalidInput(format!("c = {c} is not finite")));
    }
    if c <= 0.0 {
        return Err(Error::NoRootInInterval { n, c });
    }
    let nu = BesselOrder::new(f64::from(n) / 2.0)?;
    let jz = bessel_zero(ZeroRequest::new(nu.value() - 1.0, 1)?)?;
    let g = |x: f64| -> Result<f64> { Ok(char_quotient(nu, x)?.0 - c) };
    let dg = |x: f64| -> Result<f64> {
        let q = char_quotient(nu, x)?.1;
        Ok(x * (1.0 + q * q) - (2.0 * nu.value() - 2.0) * q)
    };

    // g(x) ~ x^2 / n - c near the origin
    let mut lo = 0.1 * jz;
    let mut glo = g(lo)?;
    while glo >= 0.0 || !glo.is_finite() {
        lo *= 0.1;
        if lo < jz * 1.0e-100 {
            return Err(Error::NoRootInInterval { n, c });
        }
        glo = g(lo)?;
    }
    let mut gap = 0.5 * jz;
    let hi = loop {
        let hi = jz - gap;
        if gap < jz * POLE_GUARD * 10.0 {
            return Err(Error::NoRootInInterval { n, c });
        }
        if g(hi)? > 0.0 {
            break hi;
        }
        gap *= 0.25;
    };
    let root = refine(g, dg, lo, hi, glo)?;
    let residual = g(root)?;
    Ok(CharRoot {
        n,
        c,
        root,
        bracket: (lo, hi),
        residual,
    })
}

/// `tau_0`: root of the characteristic equation with `c = n - 1`.
pub fn tau0(n: u32) -> Result<f64> {
    Ok(char_root(n, f64::from(n) - 1.0)?.root)
}

/// `tau_1`: root of the characteristic equation with `c = (n - 2)/2`, `n >= 3`.
pub fn tau1(n: u32) -> Result<f64> {
    if n < 3 {
        return Err(Error::Dimension(format!(
            "tau_1 needs n >= 3 (c = (n-2)/2 > 0), got n = {n}"
        )));
    }
    Ok(char_root(n, (f64::from(n) - 2.0) / 2.0)?.root)
}

/// Truncated zero series `sum_k 2x / (j_{nu,k}^2 - x^2)` with a tail
/// estimated from McMahon-asymptotic zeros.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroSeries {
    pub explicit: f64,
    pub tail: f64,
    /// Size of the first neglected correction of the tail estimate.
    pub tail_err: f64,
    pub terms: usize,
}

impl ZeroSeries {
    pub fn value(&self) -> f64 {
        self.explicit + self.tail
    }
}

/// `sum_{k >= 1} 2x/(j_{nu,k}^2 - x^2)`, which equals `J_{nu+1}(x)/J_nu(x)`
/// on `(0, j_{nu,1})`.
pub fn quotient_series(nu: f64, x: f64, terms: usize) -> Result<ZeroSeries> {
    let zeros = bessel_zeros(nu, terms)?;
    quotient_series_with(&zeros, nu, x)
}

fn quotient_series_with(zeros: &[f64], nu: f64, x: f64) -> Result<ZeroSeries> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("series needs x > 0, got {x}")));
    }
    let explicit: f64 = zeros
        .iter()
        .rev()
        .map(|&j| 2.0 * x / ((j - x) * (j + x)))
        .sum();
    // McMahon: j_k^2 ~ pi^2 u^2 - (4 nu^2 - 1)/4 with u = k + nu/2 - 1/4, so
    // each tail term is 2x / (pi^2 (u^2 - a2)).
    let a2 = (x * x + (4.0 * nu * nu - 1.0) / 4.0) / (PI * PI);
    let u0 = zeros.len() as f64 + 0.5 + 0.5 * nu - 0.25;
    let integral = if a2 > 0.0 {
        let a = a2.sqrt();
        (a / u0).atanh() / a
    } else if a2 < 0.0 {
        let b = (-a2).sqrt();
        (b / u0).atan() / b
    } else {
        1.0 / u0
    };
    let scale = 2.0 * x / (PI * PI);
    let d = u0 * u0 - a2;
    let fprime = -2.0 * scale * u0 / (d * d);
    let tail = scale * integral + fprime / 24.0;
    Ok(ZeroSeries {
        explicit,
        tail,
        tail_err: fprime.abs() / 24.0,
        terms: zeros.len(),
    })
}

/// The constant `alpha = tau0 J_{n/2}(tau0) / J_{n/2-1}(tau0)` together with
/// its zero-series representation `sum_k 2 tau0^2 / (j_{n/2-1,k}^2 - tau0^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Alpha {
    pub value: f64,
    pub series: ZeroSeries,
    pub rel_diff: f64,
}

/// Relative agreement required between the quotient and the zero series.
pub const ALPHA_TOL: f64 = 1.0e-8;

pub fn alpha_constant(n: u32, tau0: f64) -> Result<Alpha> {
    check_dimension(n)?;
    let nu = f64::from(n) / 2.0 - 1.0;
    let zeros = bessel_zeros(nu, SERIES_ZEROS)?;
    if !(tau0 > 0.0 && tau0 < zeros[0]) {
        return Err(Error::Domain(format!(
            "tau0 = {tau0} must lie in (0, j_({nu},1) = {})",
            zeros[0]
        )));
    }
    let (value, _) = char_quotient(BesselOrder::new(nu + 1.0)?, tau0)?;
    let s = quotient_series_with(&zeros, nu, tau0)?;
    let series = ZeroSeries {
        explicit: tau0 * s.explicit,
        tail: tau0 * s.tail,
        tail_err: tau0 * s.tail_err,
        terms: s.terms,
    };
    let rel_diff = (series.value() - value).abs() / value.abs();
    if rel_diff > ALPHA_TOL {
        return Err(Error::ConvergenceFailure(format!(
            "alpha quotient {value} and zero series {} differ by {rel_diff:e}",
            series.value()
        )));
    }
    Ok(Alpha {
        value,
        series,
        rel_diff,
    })
}

/// `((tau1/tau0)^2, floor, passes)` for the lower bound
/// `(tau1/tau0)^2 >= (n+1)(n+1-sqrt(4n+1)) / (n(n-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FreitasCheck {
    pub n: u32,
    pub tau0: f64,
    pub tau1: f64,
    pub ratio_sq: f64,
    pub floor: f64,
    pub passes: bool,
}

pub fn freitas_ratio_check(n: u32) -> Result<FreitasCheck> {
    if n < 3 {
        return Err(Error::Dimension(format!("needs n >= 3, got {n}")));
    }
    let t0 = tau0(n)?;
    let t1 = tau1(n)?;
    let nf = f64::from(n);
    let ratio_sq = (t1 / t0).powi(2);
    let floor = (nf + 1.0) * (nf + 1.0 - (4.0 * nf + 1.0).sqrt()) / (nf * (nf - 1.0));
    Ok(FreitasCheck {
        n,
        tau0: t0,
        tau1: t1,
        ratio_sq,
        floor,
        passes: t1 < t0 && ratio_sq >= floor,
    })
}
