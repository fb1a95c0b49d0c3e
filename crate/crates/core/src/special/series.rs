//! Power-series evaluation of `J_nu` and of the integer-order `Y_n`
//! expansion (logarithmic term plus harmonic-number series).

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant to 20 digits.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

pub(crate) const MAX_TERMS: usize = 500;

/// Summation always runs to at least this relative size of the omitted term;
/// the caller's tolerance only decides whether the result is accepted.
const SUMMATION_FLOOR: f64 = 1.0e-17;

/// Beyond this the summed magnitudes have lost every significant digit.
const MAGNITUDE_CAP: f64 = 1.0e30;

#[derive(Debug, Clone, Copy)]
pub(crate) struct SeriesSum {
    pub value: f64,
    pub abs_err: f64,
    pub terms: usize,
}

/// Neumaier-compensated accumulator that also tracks `sum |t_k|`.
#[derive(Default)]
struct Accumulator {
    sum: f64,
    comp: f64,
    magnitude: f64,
}

impl Accumulator {
    fn add(&mut self, t: f64) {
        let s = self.sum + t;
        if self.sum.abs() >= t.abs() {
            self.comp += (self.sum - s) + t;
        } else {
            self.comp += (t - s) + self.sum;
        }
        self.sum = s;
        self.magnitude += t.abs();
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `ln|1/Gamma(a)|` and its sign; `None` at the poles `a = 0, -1, -2, ...`
/// where `1/Gamma` vanishes.
pub(crate) fn ln_recip_gamma(a: f64) -> Option<(f64, f64)> {
    if a <= 0.0 && a == a.floor() {
        return None;
    }
    let (lg, sign) = libm::lgamma_r(a);
    Some((-lg, if sign < 0 { -1.0 } else { 1.0 }))
}

/// `J_nu(x) = (x/2)^nu / Gamma(nu+1) * sum_k (-x^2/4)^k / (k! (nu+1)_k)`.
///
/// Not valid for negative integer `nu` (callers reflect those first).
/// Returns `Ok(None)` when the terms grow so large that the sum carries no
/// significant digits; the caller then switches method.
pub(crate) fn j_series(nu: f64, x: f64, tol: f64) -> Result<Option<SeriesSum>> {
    if x == 0.0 {
        let value = if nu == 0.0 { 1.0 } else { 0.0 };
        return Ok(Some(SeriesSum {
            value,
            abs_err: 0.0,
            terms: 1,
        }));
    }
    let Some((ln_rg, sign_rg)) = ln_recip_gamma(nu + 1.0) else {
        return Ok(Some(SeriesSum {
            value: 0.0,
            abs_err: 0.0,
            terms: 1,
        }));
    };
    let ln_pref = nu * (0.5 * x).ln() + ln_rg;
    if ln_pref > 709.0 {
        return Err(Error::Overflow(format!(
            "J_{nu}({x}) exceeds the double range"
        )));
    }
    let pref = sign_rg * ln_pref.exp();
    if pref == 0.0 {
        // (x/2)^nu / Gamma(nu+1) underflowed: the value is below the double range.
        return Ok(Some(SeriesSum {
            value: 0.0,
            abs_err: 0.0,
            terms: 1,
        }));
    }

    let stop = tol.min(SUMMATION_FLOOR);
    let q = -0.25 * x * x;
    let mut acc = Accumulator::default();
    let mut t = 1.0_f64;
    acc.add(t);
    for k in 0..MAX_TERMS {
        let next = t * q / ((k as f64 + 1.0) * (nu + k as f64 + 1.0));
        let ratio = (q / ((k as f64 + 1.0) * (nu + k as f64 + 1.0))).abs();
        let partial = acc.total();
        if next.abs() < stop * (partial.abs() + 1.0e-300) && ratio < 1.0 {
            let rounding = 2.0 * f64::EPSILON * acc.magnitude;
            return Ok(Some(SeriesSum {
                value: pref * partial,
                abs_err: pref.abs() * (next.abs() + rounding),
                terms: k + 1,
            }));
        }
        acc.add(next);
        t = next;
        if acc.magnitude > MAGNITUDE_CAP {
            return Ok(None);
        }
    }
    Err(Error::NonConvergence {
        terms: MAX_TERMS,
        tol,
    })
}

/// Integer-order `Y_n` for `n >= 0`:
///
/// `Y_n = (2/pi) J_n (ln(x/2) + gamma) - (1/pi) sum_{k<n} (n-k-1)!/k! (x/2)^(2k-n)
///        - (1/pi) sum_k (-1)^k (H_k + H_{k+n}) / (k!(k+n)!) (x/2)^(2k+n)`.
pub(crate) fn y_integer_series(n: u32, x: f64, tol: f64) -> Result<Option<SeriesSum>> {
    debug_assert!(x > 0.0);
    let nf = n as f64;
    let Some(jn) = j_series(nf, x, tol)? else {
        return Ok(None);
    };
    let half = 0.5 * x;
    let log_term = 2.0 / PI * jn.value * (half.ln() + EULER_GAMMA);

    // Finite sum, built from its k = 0 term (n-1)! (x/2)^-n in log space.
    let mut finite = Accumulator::default();
    if n > 0 {
        let ln_t0 = libm::lgamma(nf) - nf * half.ln();
        if ln_t0 > 709.0 {
            return Err(Error::Overflow(format!(
                "Y_{n}({x}) exceeds the double range"
            )));
        }
        let mut t = ln_t0.exp();
        finite.add(t);
        for k in 1..n {
            let kf = k as f64;
            t *= half * half / (kf * (nf - kf));
            finite.add(t);
        }
    }

    // Harmonic series, same term ratio as the J_n series.
    let Some((ln_rg, _)) = ln_recip_gamma(nf + 1.0) else {
        unreachable!("n + 1 >= 1")
    };
    let pref = (nf * half.ln() + ln_rg).exp();
    let stop = tol.min(SUMMATION_FLOOR);
    let q = -half * half;
    let mut harm = Accumulator::default();
    let mut t = 1.0_f64;
    let mut h_k = 0.0_f64;
    let mut h_kn: f64 = (1..=n).map(|i| 1.0 / i as f64).sum();
    harm.add(t * (h_k + h_kn));
    let mut terms = 1;
    let mut converged = false;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        t *= q / ((kf + 1.0) * (nf + kf + 1.0));
        h_k += 1.0 / (kf + 1.0);
        h_kn += 1.0 / (nf + kf + 1.0);
        let term = t * (h_k + h_kn);
        let decreasing = (kf + 2.0) * (nf + kf + 2.0) > half * half;
        let partial = harm.total();
        terms = k + 2;
        if term.abs() < stop * (partial.abs() + 1.0e-300) && decreasing {
            converged = true;
            harm.add(term);
            break;
        }
        harm.add(term);
        if harm.magnitude > MAGNITUDE_CAP {
            return Ok(None);
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            terms: MAX_TERMS,
            tol,
        });
    }

    let finite_part = finite.total() / PI;
    let harm_part = pref * harm.total() / PI;
    let value = log_term - finite_part - harm_part;
    let rounding = 4.0
        * f64::EPSILON
        * (log_term.abs() + finite.magnitude / PI + pref * harm.magnitude / PI);
    let abs_err = rounding + 2.0 / PI * jn.abs_err * (half.ln() + EULER_GAMMA).abs();
    Ok(Some(SeriesSum {
        value,
        abs_err,
        terms: terms.max(jn.terms),
    }))
}
