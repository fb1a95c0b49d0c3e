//! Bessel functions of the first and second kind for real order.
//!
//! `J_nu` is summed from its power series whenever the series' own error
//! estimate meets the requested tolerance. When cancellation ruins the
//! series (large `x`, or `x` close to a zero) the value comes from the
//! continued-fraction path in [`steed`]. Non-integer `Y_nu` is formed from
//! `J_nu` and `J_-nu`; integer `Y_n` uses the logarithmic expansion.

mod series;
mod steed;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

pub use series::EULER_GAMMA;

/// Largest supported `|nu|`.
pub const MAX_ORDER: f64 = 200.0;

/// Default relative tolerance for function values.
pub const DEFAULT_TOL: f64 = 1.0e-12;

/// A real Bessel order `nu` with `|nu| <= 200`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct BesselOrder(f64);

impl BesselOrder {
    pub fn new(nu: f64) -> Result<Self> {
        if !nu.is_finite() || nu.abs() > MAX_ORDER {
            return Err(Error::OrderOutOfRange(nu));
        }
        Ok(Self(nu))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 == self.0.round()
    }

    /// True for `nu = k + 1/2`; integers are not half-integers.
    pub fn is_half_integer(self) -> bool {
        let twice = 2.0 * self.0;
        twice == twice.round() && !self.is_integer()
    }

    /// `-nu`
    pub fn negated(self) -> Self {
        Self(-self.0)
    }

    /// `nu + delta`, range-checked.
    pub fn shifted(self, delta: f64) -> Result<Self> {
        Self::new(self.0 + delta)
    }
}

impl TryFrom<f64> for BesselOrder {
    type Error = Error;

    fn try_from(nu: f64) -> Result<Self> {
        Self::new(nu)
    }
}

/// Which algorithm produced a [`BesselValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    PowerSeries,
    LogSeries,
    ContinuedFraction,
}

/// A function value with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BesselValue {
    pub x: f64,
    pub value: f64,
    pub abs_err_estimate: f64,
    pub terms_used: usize,
    pub method: Method,
}

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("argument {x} is not finite")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("argument {x} is negative")));
    }
    Ok(())
}

fn parity_sign(n: f64) -> f64 {
    if (n as i64) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Error model for the continued-fraction path. In the oscillatory region
/// `x > nu` the error is of the local amplitude `sqrt(J^2 + Y^2)` times the
/// rounding accumulated over the CF1 iterations; below the turning point both
/// functions carry relative accuracy.
fn cf_error(value: f64, j: f64, y: f64, nu: f64, x: f64, iterations: usize) -> f64 {
    let scale = if x > nu && y.is_finite() {
        j.hypot(y)
    } else {
        value.abs()
    };
    f64::EPSILON * scale * (16.0 + iterations as f64)
}

/// `(sin(pi t), cos(pi t))`, exact at integers and half-integers. The
/// argument is reduced to the nearest half-integer first, so both values keep
/// full relative accuracy near their zeros.
pub(crate) fn sin_cos_pi(t: f64) -> (f64, f64) {
    let q = (2.0 * t).round();
    let d = t - 0.5 * q; // exact, |d| <= 1/4
    let (s, c) = (PI * d).sin_cos();
    // + 0.0 turns -0.0 into 0.0
    match q.rem_euclid(4.0) as u8 {
        0 => (s + 0.0, c),
        1 => (c, -s + 0.0),
        2 => (-s + 0.0, -c),
        _ => (-c, s + 0.0),
    }
}

/// `J_nu(x)` with the default tolerance.
pub fn eval_j(order: BesselOrder, x: f64) -> Result<BesselValue> {
    eval_j_tol(order, x, DEFAULT_TOL)
}

/// `J_nu(x)` to relative tolerance `tol` (where `|J| > 1e-300`).
pub fn eval_j_tol(order: BesselOrder, x: f64, tol: f64) -> Result<BesselValue> {
    check_x(x)?;
    let nu = order.value();
    if x == 0.0 && nu < 0.0 {
        return Err(Error::Domain(format!("J_{nu}(0) with negative order")));
    }
    if nu < 0.0 && order.is_integer() {
        let r = eval_j_tol(order.negated(), x, tol)?;
        let s = parity_sign(-nu);
        return Ok(BesselValue {
            value: s * r.value,
            ..r
        });
    }

    let series = series::j_series(nu, x, tol)?;
    if let Some(s) = series {
        if s.abs_err <= tol * s.value.abs() || s.value.abs() < 1.0e-300 {
            return Ok(BesselValue {
                x,
                value: s.value,
                abs_err_estimate: s.abs_err,
                terms_used: s.terms,
                method: Method::PowerSeries,
            });
        }
    }

    let series = series.map(|s| BesselValue {
        x,
        value: s.value,
        abs_err_estimate: s.abs_err,
        terms_used: s.terms,
        method: Method::PowerSeries,
    });
    let cf = if nu >= 0.0 {
        steed::bessel_jy(nu, x).map(|p| BesselValue {
            x,
            value: p.j,
            abs_err_estimate: cf_error(p.j, p.j, p.y, nu, x, p.iterations),
            terms_used: p.iterations.max(1),
            method: Method::ContinuedFraction,
        })
    } else {
        // J_{-mu} = cos(mu pi) J_mu - sin(mu pi) Y_mu
        let mu = -nu;
        steed::bessel_jy(mu, x).and_then(|p| {
            let (s, c) = sin_cos_pi(mu);
            let v = c * p.j - s * p.y;
            let err = cf_error(c * p.j, p.j, p.y, mu, x, p.iterations)
                + cf_error(s * p.y, p.j, p.y, mu, x, p.iterations);
            v.is_finite().then_some(BesselValue {
                x,
                value: v,
                abs_err_estimate: err,
                terms_used: p.iterations.max(1),
                method: Method::ContinuedFraction,
            })
        })
    };
    most_accurate([series, cf]).ok_or(Error::NonConvergence {
        terms: series::MAX_TERMS,
        tol,
    })
}

/// The candidate with the smallest error estimate; ties keep the earlier one.
fn most_accurate<const N: usize>(cands: [Option<BesselValue>; N]) -> Option<BesselValue> {
    cands
        .into_iter()
        .flatten()
        .filter(|c| c.value.is_finite())
        .fold(None, |best: Option<BesselValue>, c| match best {
            Some(b) if b.abs_err_estimate <= c.abs_err_estimate => Some(b),
            _ => Some(c),
        })
}

/// `Y_nu(x)` with the default tolerance.
pub fn eval_y(order: BesselOrder, x: f64) -> Result<BesselValue> {
    eval_y_tol(order, x, DEFAULT_TOL)
}

/// `Y_nu(x)`, `x > 0`.
pub fn eval_y_tol(order: BesselOrder, x: f64, tol: f64) -> Result<BesselValue> {
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("Y_nu is singular at x = 0".into()));
    }
    let nu = order.value();
    if nu < 0.0 && order.is_integer() {
        let r = eval_y_tol(order.negated(), x, tol)?;
        let s = parity_sign(-nu);
        return Ok(BesselValue {
            value: s * r.value,
            ..r
        });
    }

    let direct = if order.is_integer() {
        series::y_integer_series(nu as u32, x, tol)?.map(|s| BesselValue {
            x,
            value: s.value,
            abs_err_estimate: s.abs_err,
            terms_used: s.terms,
            method: Method::LogSeries,
        })
    } else {
        // Y_nu = (J_nu cos(nu pi) - J_-nu) / sin(nu pi)
        let jp = eval_j_tol(order, x, tol)?;
        let jm = eval_j_tol(order.negated(), x, tol)?;
        let (s, c) = sin_cos_pi(nu);
        let value = (jp.value * c - jm.value) / s;
        let abs_err = (jp.abs_err_estimate * c.abs() + jm.abs_err_estimate) / s.abs()
            + 2.0 * f64::EPSILON * ((jp.value * c).abs() + jm.value.abs()) / s.abs();
        Some(BesselValue {
            x,
            value,
            abs_err_estimate: abs_err,
            terms_used: jp.terms_used.max(jm.terms_used),
            method: jp.method,
        })
    };
    if let Some(d) = direct {
        if d.value.is_finite() && d.abs_err_estimate <= tol * d.value.abs() {
            return Ok(d);
        }
    }

    let mu = nu.abs();
    let cf = steed::bessel_jy(mu, x).and_then(|p| {
        let (v, err) = if nu >= 0.0 {
            (p.y, cf_error(p.y, p.j, p.y, mu, x, p.iterations))
        } else {
            // Y_{-mu} = sin(mu pi) J_mu + cos(mu pi) Y_mu
            let (s, c) = sin_cos_pi(mu);
            (
                s * p.j + c * p.y,
                cf_error(s * p.j, p.j, p.y, mu, x, p.iterations)
                    + cf_error(c * p.y, p.j, p.y, mu, x, p.iterations),
            )
        };
        v.is_finite().then(|| BesselValue {
            x,
            value: v,
            abs_err_estimate: err,
            terms_used: p.iterations.max(1),
            method: Method::ContinuedFraction,
        })
    });
    most_accurate([direct, cf])
        .ok_or_else(|| Error::Overflow(format!("Y_{nu}({x}) is not representable")))
}

/// Plain-value shorthand for `J_nu(x)`.
pub fn bessel_j(nu: f64, x: f64) -> Result<f64> {
    Ok(eval_j(BesselOrder::new(nu)?, x)?.value)
}

/// Plain-value shorthand for `Y_nu(x)`.
pub fn bessel_y(nu: f64, x: f64) -> Result<f64> {
    Ok(eval_y(BesselOrder::new(nu)?, x)?.value)
}

/// `J'_nu(x) = J_{nu-1}(x) - (nu/x) J_nu(x)`.
pub fn eval_j_derivative(order: BesselOrder, x: f64) -> Result<f64> {
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("derivative requires x > 0".into()));
    }
    let nu = order.value();
    let jm1 = eval_j(order.shifted(-1.0)?, x)?.value;
    let j = eval_j(order, x)?.value;
    Ok(jm1 - nu / x * j)
}

/// The three expressions of `J'_nu` obtained from the lower-order
/// recurrences, in the order
/// `(J_{nu-1} - J_{nu+1})/2`, `J_{nu-1} - (nu/x) J_nu`, `(nu/x) J_nu - J_{nu+1}`.
pub fn j_derivative_forms(order: BesselOrder, x: f64) -> Result<[f64; 3]> {
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("derivative requires x > 0".into()));
    }
    let nu = order.value();
    let jm1 = eval_j(order.shifted(-1.0)?, x)?.value;
    let j = eval_j(order, x)?.value;
    let jp1 = eval_j(order.shifted(1.0)?, x)?.value;
    Ok([0.5 * (jm1 - jp1), jm1 - nu / x * j, nu / x * j - jp1])
}

/// Distance below which a point counts as sitting on a zero of the
/// denominator of a Bessel quotient.
pub const POLE_GUARD: f64 = 1.0e-8;

/// Whether `x` lies within [`POLE_GUARD`] of a positive zero of `J_nu`.
///
/// Uses the Newton distance `|J / J'|`. Near the origin `J ~ x^nu` makes
/// that distance about `x / nu`, which is not a positive zero, so such
/// points are excluded.
pub(crate) fn near_positive_zero(order: BesselOrder, x: f64) -> Result<bool> {
    let j = eval_j(order, x)?.value;
    if j == 0.0 {
        // underflow below the turning point is not a zero
        return Ok(x >= order.value().abs());
    }
    let dj = eval_j_derivative(order, x)?;
    let d = (j / dj).abs();
    Ok(d < POLE_GUARD && d * order.value().abs().max(1.0) < 0.5 * x)
}

/// `J_{nu+1}(x) / J_nu(x)` evaluated directly.
pub fn ratio_next_over_current(order: BesselOrder, x: f64) -> Result<f64> {
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("ratio requires x > 0".into()));
    }
    if near_positive_zero(order, x)? {
        return Err(Error::NearPole {
            nu: order.value(),
            x,
            guard: POLE_GUARD,
        });
    }
    let num = eval_j(order.shifted(1.0)?, x)?.value;
    let den = eval_j(order, x)?.value;
    Ok(num / den)
}

/// Residuals of the two cross-product identities
/// `J_{nu-1} J_-nu + J_nu J_{1-nu} = 2 sin(pi nu)/(pi x)` and
/// `Y_nu J_{nu+1} - Y_{nu+1} J_nu = 2/(pi x)`.
pub fn lommel_residuals(order: BesselOrder, x: f64) -> Result<(f64, f64)> {
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("identities require x > 0".into()));
    }
    let nu = order.value();
    let j = |v: f64| -> Result<f64> { Ok(eval_j(BesselOrder::new(v)?, x)?.value) };
    let y = |v: f64| -> Result<f64> { Ok(eval_y(BesselOrder::new(v)?, x)?.value) };
    let first = j(nu - 1.0)? * j(-nu)? + j(nu)? * j(1.0 - nu)?;
    let first_rhs = if order.is_integer() {
        0.0
    } else {
        2.0 * sin_cos_pi(nu).0 / (PI * x)
    };
    let second = y(nu)? * j(nu + 1.0)? - y(nu + 1.0)? * j(nu)?;
    Ok(((first - first_rhs).abs(), (second - 2.0 / (PI * x)).abs()))
}

/// Parameters of the generalised Bessel equation
/// `y'' - (2a-1)/x y' + (b^2 c^2 x^(2c-2) + (a^2 - m^2 c^2)/x^2) y = 0`
/// and of its solution `x^a (A J_m(b x^c) + B Z_m(b x^c))`, where `Z_m` is
/// `Y_m` for integer `m` and `J_-m` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BowmanParams {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub m: BesselOrder,
    pub a: f64,
    pub b: f64,
}

impl BowmanParams {
    /// Coefficients `(p, q)` of `y'' + p(x) y' + q(x) y = 0`.
    pub fn coefficients(&self, x: f64) -> (f64, f64) {
        let m = self.m.value();
        let p = -(2.0 * self.alpha - 1.0) / x;
        let q = self.beta.powi(2) * self.gamma.powi(2) * x.powf(2.0 * self.gamma - 2.0)
            + (self.alpha.powi(2) - m * m * self.gamma.powi(2)) / (x * x);
        (p, q)
    }
}

/// Evaluates the solution of the generalised Bessel equation at `x > 0`.
pub fn bowman_solution(params: &BowmanParams, x: f64) -> Result<f64> {
    check_x(x)?;
    if x == 0.0 {
        return Err(Error::Domain("solution is evaluated for x > 0".into()));
    }
    if !(params.beta > 0.0) {
        return Err(Error::InvalidInput("beta must be positive".into()));
    }
    if params.a == 0.0 && params.b == 0.0 {
        return Ok(0.0);
    }
    let z = params.beta * x.powf(params.gamma);
    let m = params.m;
    let first = if params.a == 0.0 {
        0.0
    } else {
        params.a * eval_j(m, z)?.value
    };
    let second = if params.b == 0.0 {
        0.0
    } else if m.is_integer() {
        params.b * eval_y(m, z)?.value
    } else {
        params.b * eval_j(m.negated(), z)?.value
    };
    Ok(x.powf(params.alpha) * (first + second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn ord(nu: f64) -> BesselOrder {
        BesselOrder::new(nu).unwrap()
    }

    #[test]
    fn order_flags() {
        assert!(ord(3.0).is_integer());
        assert!(!ord(3.0).is_half_integer());
        assert!(ord(-2.5).is_half_integer());
        assert!(!ord(0.3).is_half_integer());
        assert!(BesselOrder::new(200.5).is_err());
        assert!(BesselOrder::new(f64::NAN).is_err());
    }

    #[test]
    fn j_examples() {
        assert_eq!(eval_j(ord(0.0), 0.0).unwrap().value, 1.0);
        assert_relative_eq!(
            eval_j(ord(0.5), PI / 2.0).unwrap().value,
            2.0 / PI,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            eval_j(ord(-0.5), PI).unwrap().value,
            -(2.0 / (PI * PI)).sqrt(),
            max_relative = 1e-13
        );
        assert!(eval_j(ord(0.0), 2.404_825_557_695_773).unwrap().value.abs() < 1e-10);
    }

    #[test]
    fn j_errors() {
        assert!(matches!(eval_j(ord(1.0), -1.0), Err(Error::Domain(_))));
        assert!(matches!(eval_j(ord(-0.5), 0.0), Err(Error::Domain(_))));
        assert!(matches!(
            BesselOrder::new(201.0),
            Err(Error::OrderOutOfRange(_))
        ));
    }

    #[test]
    fn y_examples() {
        assert_relative_eq!(
            eval_y(ord(0.5), PI).unwrap().value,
            (2.0 / (PI * PI)).sqrt(),
            max_relative = 1e-13
        );
        assert!(eval_y(ord(0.0), 0.0).is_err());
        let y2 = bessel_y(2.0, 1.0).unwrap();
        let y3 = bessel_y(3.0, 1.0).unwrap();
        let j2 = bessel_j(2.0, 1.0).unwrap();
        let j3 = bessel_j(3.0, 1.0).unwrap();
        assert!((y2 * j3 - y3 * j2 - 2.0 / PI).abs() < 1e-10);
    }

    #[test]
    fn y_overflow_is_signalled() {
        assert!(eval_y(ord(150.0), 1e-3).is_err());
    }

    #[test]
    fn negative_integer_reflection() {
        for &x in &[0.5, 3.0, 25.0] {
            assert_relative_eq!(
                bessel_j(-3.0, x).unwrap(),
                -bessel_j(3.0, x).unwrap(),
                max_relative = 1e-14
            );
            assert_relative_eq!(
                bessel_y(-2.0, x).unwrap(),
                bessel_y(2.0, x).unwrap(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn derivative_examples() {
        let j01 = 2.404_825_557_695_773;
        let d = eval_j_derivative(ord(0.0), j01).unwrap();
        assert_relative_eq!(d, -bessel_j(1.0, j01).unwrap(), max_relative = 1e-12);
        assert_relative_eq!(d, -0.519_147_497_289_466, max_relative = 1e-9);
        let d = eval_j_derivative(ord(0.5), PI).unwrap();
        assert_relative_eq!(d, -(2.0 / (PI * PI)).sqrt(), max_relative = 1e-12);
        // finite-difference oracle
        let h = 1e-6;
        let fd = (bessel_j(3.0, 5.0 + h).unwrap() - bessel_j(3.0, 5.0 - h).unwrap()) / (2.0 * h);
        assert!((eval_j_derivative(ord(3.0), 5.0).unwrap() - fd).abs() < 1e-7);
    }

    #[test]
    fn ratio_examples() {
        let r = ratio_next_over_current(ord(0.5), 1.0).unwrap();
        assert_relative_eq!(
            r,
            (1.0_f64.sin() - 1.0_f64.cos()) / 1.0_f64.sin(),
            max_relative = 1e-13
        );
        let r = ratio_next_over_current(ord(0.0), 1e-4).unwrap();
        assert!((r - 5e-5).abs() < 1e-12);
        assert!(matches!(
            ratio_next_over_current(ord(0.0), 2.404_825_557_695_773),
            Err(Error::NearPole { .. })
        ));
    }

    #[test]
    fn lommel_examples() {
        let (a, b) = lommel_residuals(ord(0.5), 1.0).unwrap();
        assert!(a <= 1e-12 && b <= 1e-12, "{a} {b}");
        let (a, b) = lommel_residuals(ord(3.0), 0.1).unwrap();
        assert!(a <= 1e-9 && b <= 1e-9, "{a} {b}");
        let (a, _) = lommel_residuals(ord(4.0), 7.3).unwrap();
        assert!(a <= 1e-12);
    }

    #[test]
    fn bowman_examples() {
        let p = BowmanParams {
            alpha: 0.5,
            beta: 1.0,
            gamma: 1.0,
            m: ord(0.5),
            a: 1.0,
            b: 0.0,
        };
        assert_relative_eq!(
            bowman_solution(&p, 1.0).unwrap(),
            (2.0 / PI).sqrt() * 1.0_f64.sin(),
            max_relative = 1e-13
        );
        let zero = BowmanParams { a: 0.0, ..p };
        assert_eq!(bowman_solution(&zero, 3.3).unwrap(), 0.0);
    }

    #[test]
    fn bowman_residual() {
        let p = BowmanParams {
            alpha: 1.5,
            beta: 2.0,
            gamma: 1.0,
            m: ord(1.5),
            a: 1.0,
            b: 1.0,
        };
        let (x, h) = (0.7, 1e-4);
        let y = |t: f64| bowman_solution(&p, t).unwrap();
        let (y0, yp, ym) = (y(x), y(x + h), y(x - h));
        let d1 = (yp - ym) / (2.0 * h);
        let d2 = (yp - 2.0 * y0 + ym) / (h * h);
        let (pc, qc) = p.coefficients(x);
        let residual = d2 + pc * d1 + qc * y0;
        assert!(residual.abs() < 1e-6 * y0.abs().max(1.0), "{residual}");
    }
}
