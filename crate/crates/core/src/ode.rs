//! The radial comparison equation
//! `y'' + (n-1) H0 / (1 - r H0) y' + lambda y = 0`, `0 <= r < 1/H0`,
//! integrated numerically and in closed form
//! `y = s^(n/2) (A J_{n/2}(beta s) + B Z(beta s))`, `s = 1 - r H0`,
//! `beta = sqrt(lambda)/H0`, where `Z = J_{-n/2}` for odd `n` and
//! `Z = Y_{n/2}` for even `n`.

use std::f64::consts::PI;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{bessel_j, bessel_y};

/// Closest approach to the singular point, as a fraction of `1/H0`.
pub const SINGULAR_MARGIN: f64 = 1.0e-3;

/// Local error tolerance of the adaptive integrator.
pub const IVP_TOL: f64 = 1.0e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OdeProblem {
    pub n: u32,
    pub h0: f64,
    pub lambda: f64,
    /// `y(0)`, the volume integral of `f`.
    pub y0: f64,
    /// `y'(0)`, minus the boundary integral of `f`.
    pub yp0: f64,
    pub r_max: f64,
}

impl OdeProblem {
    /// A problem integrated up to `(1 - 1e-3)/H0`.
    pub fn new(n: u32, h0: f64, lambda: f64, y0: f64, yp0: f64) -> Result<Self> {
        Self::with_r_max(n, h0, lambda, y0, yp0, (1.0 - SINGULAR_MARGIN) / h0)
    }

    pub fn with_r_max(n: u32, h0: f64, lambda: f64, y0: f64, yp0: f64, r_max: f64) -> Result<Self> {
        let p = Self {
            n,
            h0,
            lambda,
            y0,
            yp0,
            r_max,
        };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Dimension(format!("n = {} must be >= 2", self.n)));
        }
        if !(self.h0 > 0.0 && self.h0.is_finite()) {
            return Err(Error::InvalidInput(format!("H0 = {} must be positive", self.h0)));
        }
        if !(self.lambda > 0.0 && self.lambda.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "lambda = {} must be positive",
                self.lambda
            )));
        }
        if !(self.y0.is_finite() && self.yp0.is_finite()) {
            return Err(Error::InvalidInput("initial data must be finite".into()));
        }
        if !(self.r_max > 0.0 && self.r_max * self.h0 < 1.0) {
            return Err(Error::InvalidInput(format!(
                "r_max = {} must lie in (0, 1/H0 = {})",
                self.r_max,
                1.0 / self.h0
            )));
        }
        Ok(())
    }

    fn nu(&self) -> f64 {
        f64::from(self.n) / 2.0
    }

    pub fn beta(&self) -> f64 {
        self.lambda.sqrt() / self.h0
    }

    pub fn branch(&self) -> Branch {
        if self.n % 2 == 1 {
            Branch::Odd
        } else {
            Branch::Even
        }
    }
}

/// Second solution used in the closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// `J_{-n/2}`.
    Odd,
    /// `Y_{n/2}`.
    Even,
}

/// `Z(x)` and the companion `Z_low(x)` entering `d/dr [s^nu Z(beta s)] =
/// sign * sqrt(lambda) s^nu Z_low(beta s)`.
fn second_kind(branch: Branch, nu: f64, x: f64) -> Result<(f64, f64, f64)> {
    Ok(match branch {
        Branch::Odd => (bessel_j(-nu, x)?, bessel_j(1.0 - nu, x)?, 1.0),
        Branch::Even => (bessel_y(nu, x)?, bessel_y(nu - 1.0, x)?, -1.0),
    })
}

/// Solution of the 2x2 initial-value system together with the coefficients
/// obtained from the explicit closed-form expressions, for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
    pub branch: Branch,
    pub det: f64,
    /// Odd `n`: `2 H0 sin(pi n / 2) / pi`. Even `n`: `-2 H0 / pi`.
    pub det_expected: f64,
    /// Coefficients from the explicit formulas with prefactor
    /// `pi / (2 H0 sin(pi n/2))` (odd) or `-H0 / (2 pi)` (even).
    pub printed_a: f64,
    pub printed_b: f64,
    /// `printed / solved`; 1 when the explicit formulas agree.
    pub printed_ratio: f64,
}

/// Solves `A J_nu(beta) + B Z(beta) = y0` and
/// `-sqrt(l) A J_{nu-1}(beta) + sign sqrt(l) B Z_low(beta) = yp0`.
pub fn closed_form_coefficients(prob: &OdeProblem) -> Result<Coefficients> {
    prob.validate()?;
    let nu = prob.nu();
    let x = prob.beta();
    let sl = prob.lambda.sqrt();
    let branch = prob.branch();
    let jn = bessel_j(nu, x)?;
    let jm = bessel_j(nu - 1.0, x)?;
    let (z, zl, sign) = second_kind(branch, nu, x)?;
    // [[jn, z], [-sl jm, sign sl zl]]
    let (m11, m12, m21, m22) = (jn, z, -sl * jm, sign * sl * zl);
    let det = m11 * m22 - m12 * m21;
    let a = (prob.y0 * m22 - m12 * prob.yp0) / det;
    let b = (m11 * prob.yp0 - m21 * prob.y0) / det;

    let boundary = -prob.yp0;
    let volume = prob.y0;
    let (det_expected, printed_a, printed_b) = match branch {
        Branch::Odd => {
            let s = crate::special::sin_cos_pi(nu).0;
            let pref = PI / (2.0 * prob.h0 * s);
            (
                2.0 * prob.h0 * s / PI,
                pref * (z * boundary + sl * zl * volume),
                pref * (-jn * boundary + sl * jm * volume),
            )
        }
        Branch::Even => {
            let pref = -prob.h0 / (2.0 * PI);
            (
                -2.0 * prob.h0 / PI,
                pref * (z * boundary - sl * zl * volume),
                pref * (-jn * boundary + sl * jm * volume),
            )
        }
    };
    let printed_ratio = if a != 0.0 {
        printed_a / a
    } else if b != 0.0 {
        printed_b / b
    } else {
        1.0
    };
    Ok(Coefficients {
        a,
        b,
        branch,
        det,
        det_expected,
        printed_a,
        printed_b,
        printed_ratio,
    })
}

/// `y(r)` from the closed form.
pub fn closed_form_eval(prob: &OdeProblem, a: f64, b: f64, r: f64) -> Result<f64> {
    Ok(closed_form_pair(prob, a, b, r)?.0)
}

/// `(y(r), y'(r))` from the closed form.
pub fn closed_form_pair(prob: &OdeProblem, a: f64, b: f64, r: f64) -> Result<(f64, f64)> {
    let s = 1.0 - r * prob.h0;
    if !(r >= 0.0 && s > 0.0) {
        return Err(Error::Domain(format!(
            "r = {r} must lie in [0, 1/H0 = {})",
            1.0 / prob.h0
        )));
    }
    if a == 0.0 && b == 0.0 {
        return Ok((0.0, 0.0));
    }
    let nu = prob.nu();
    let x = prob.beta() * s;
    let sn = s.powf(nu);
    let sl = prob.lambda.sqrt();
    let (jn, jm) = (bessel_j(nu, x)?, bessel_j(nu - 1.0, x)?);
    let (z, zl, sign) = if b != 0.0 {
        second_kind(prob.branch(), nu, x)?
    } else {
        (0.0, 0.0, 0.0)
    };
    let y = sn * (a * jn + b * z);
    let dy = sl * sn * (-a * jm + sign * b * zl);
    Ok((y, dy))
}

/// Trajectory of the numerical integration with its closed-form comparison.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OdeSolution {
    pub problem: OdeProblem,
    pub forcing: f64,
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub derivatives: Vec<f64>,
    pub a: f64,
    pub b: f64,
    /// Closed-form values on `grid` (unforced problem only).
    pub closed_form: Vec<f64>,
    /// `max |numeric - closed form|` over the grid.
    pub max_residual: f64,
    pub max_abs: f64,
    pub steps_rejected: usize,
}

/// Integrates the comparison equation with the embedded Dormand-Prince
/// 5(4) pair.
pub fn integrate_ivp(prob: &OdeProblem) -> Result<OdeSolution> {
    integrate_forced(prob, 0.0)
}

/// Integrates `y'' + (n-1) H0/(1 - r H0) y' + lambda y = delta`.
pub fn integrate_forced(prob: &OdeProblem, delta: f64) -> Result<OdeSolution> {
    prob.validate()?;
    let coef = closed_form_coefficients(prob)?;
    let p = f64::from(prob.n - 1) * prob.h0;
    let rhs = |r: f64, y: [f64; 2]| -> [f64; 2] {
        [y[1], delta - p / (1.0 - r * prob.h0) * y[1] - prob.lambda * y[0]]
    };
    let (grid, states, rejected) = dopri45(rhs, [prob.y0, prob.yp0], prob.r_max, IVP_TOL)?;
    let values: Vec<f64> = states.iter().map(|s| s[0]).collect();
    let derivatives: Vec<f64> = states.iter().map(|s| s[1]).collect();
    let max_abs = values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let (closed_form, max_residual) = if delta == 0.0 {
        let cf = grid
            .iter()
            .map(|&r| closed_form_eval(prob, coef.a, coef.b, r))
            .collect::<Result<Vec<f64>>>()?;
        let res = cf
            .iter()
            .zip(&values)
            .fold(0.0_f64, |m, (c, v)| m.max((c - v).abs()));
        (cf, res)
    } else {
        (Vec::new(), f64::NAN)
    };
    Ok(OdeSolution {
        problem: *prob,
        forcing: delta,
        grid,
        values,
        derivatives,
        a: coef.a,
        b: coef.b,
        closed_form,
        max_residual,
        max_abs,
        steps_rejected: rejected,
    })
}

// Dormand-Prince 5(4) tableau.
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

type Trajectory = (Vec<f64>, Vec<[f64; 2]>, usize);

fn dopri45(f: impl Fn(f64, [f64; 2]) -> [f64; 2], y0: [f64; 2], r_end: f64, tol: f64) -> Result<Trajectory> {
    let mut r = 0.0;
    let mut y = y0;
    let mut h = (r_end * 1.0e-3).max(1.0e-6);
    let mut grid = vec![0.0];
    let mut states = vec![y0];
    let mut rejected = 0;
    while r < r_end {
        if r + h > r_end {
            h = r_end - r;
        }
        if h < 1.0e-14 * (1.0 + r.abs()) {
            return Err(Error::StepUnderflow { r });
        }
        let mut k = [[0.0; 2]; 7];
        for s in 0..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(s) {
                for i in 0..2 {
                    ys[i] += h * A[s][j] * kj[i];
                }
            }
            k[s] = f(r + C[s] * h, ys);
        }
        let mut y5 = y;
        let mut err = 0.0_f64;
        for i in 0..2 {
            let (mut d5, mut d4) = (0.0, 0.0);
            for s in 0..7 {
                d5 += B5[s] * k[s][i];
                d4 += B4[s] * k[s][i];
            }
            y5[i] += h * d5;
            let scale = tol * (1.0 + y[i].abs().max(y5[i].abs()));
            err = err.max((h * (d5 - d4)).abs() / scale);
        }
        if !err.is_finite() {
            h *= 0.1;
            rejected += 1;
            continue;
        }
        if err <= 1.0 {
            r = if r_end - (r + h) < 1.0e-15 * r_end { r_end } else { r + h };
            y = y5;
            grid.push(r);
            states.push(y);
        } else {
            rejected += 1;
        }
        let factor = if err == 0.0 {
            5.0
        } else {
            (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= factor;
    }
    Ok((grid, states, rejected))
}

/// Location of the first zero of `y` and the resulting case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ZeroCase {
    /// `y(R0) = 0` at `R0 < r_max`, with `Theta(R0) = (1 - R0 H0)^(n-1) > 0`.
    Interior { r0: f64, theta: f64 },
    /// No zero before `r_max` and `B = 0`: `y -> 0` only at `r = 1/H0`, where
    /// `Theta = 0`.
    Boundary { r0: f64, theta: f64 },
    /// `y` keeps its sign on `[0, r_max]`.
    Absent,
}

/// Ratio `|B|/|A|` below which the coefficients count as the equality case.
pub const EQUALITY_RATIO: f64 = 1.0e-8;

/// Smallest sign change of `y` on the trajectory, refined by bisection on the
/// closed form to `1e-10`.
pub fn first_zero(sol: &OdeSolution) -> Result<ZeroCase> {
    let prob = &sol.problem;
    let theta = |r: f64| (1.0 - r * prob.h0).powi(prob.n as i32 - 1);
    let eval = |r: f64| -> Result<f64> {
        if sol.forcing == 0.0 {
            closed_form_eval(prob, sol.a, sol.b, r)
        } else {
            interpolate(sol, r)
        }
    };
    for i in 1..sol.grid.len() {
        let (v0, v1) = (sol.values[i - 1], sol.values[i]);
        if v0 == 0.0 && i == 1 && sol.grid[0] == 0.0 {
            continue;
        }
        if v1 == 0.0 || v0.signum() != v1.signum() {
            let (mut lo, mut hi) = (sol.grid[i - 1], sol.grid[i]);
            let flo = eval(lo)?;
            while hi - lo > 1.0e-10 {
                let mid = 0.5 * (lo + hi);
                let fm = eval(mid)?;
                if fm == 0.0 {
                    lo = mid;
                    hi = mid;
                    break;
                }
                if fm.signum() == flo.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let r0 = 0.5 * (lo + hi);
            return Ok(ZeroCase::Interior {
                r0,
                theta: theta(r0),
            });
        }
    }
    if sol.a != 0.0 && sol.b.abs() <= EQUALITY_RATIO * sol.a.abs() {
        return Ok(ZeroCase::Boundary {
            r0: 1.0 / prob.h0,
            theta: 0.0,
        });
    }
    Ok(ZeroCase::Absent)
}

/// Cubic Hermite interpolation of the stored trajectory.
fn interpolate(sol: &OdeSolution, r: f64) -> Result<f64> {
    let i = sol.grid.partition_point(|&g| g < r).clamp(1, sol.grid.len() - 1);
    let (r0, r1) = (sol.grid[i - 1], sol.grid[i]);
    let h = r1 - r0;
    if h <= 0.0 {
        return Ok(sol.values[i]);
    }
    let t = (r - r0) / h;
    let (y0, y1) = (sol.values[i - 1], sol.values[i]);
    let (d0, d1) = (sol.derivatives[i - 1] * h, sol.derivatives[i] * h);
    let t2 = t * t;
    let t3 = t2 * t;
    Ok((2.0 * t3 - 3.0 * t2 + 1.0) * y0
        + (t3 - 2.0 * t2 + t) * d0
        + (-2.0 * t3 + 3.0 * t2) * y1
        + (t3 - t2) * d1)
}

/// Panels of the composite Simpson rule used for the ball data.
pub const BALL_QUADRATURE_PANELS: usize = 4096;

/// Initial data `(y0, yp0)` generated by `u(rho) = rho^(1-n/2) J_{n/2-1}(sqrt(l) rho)`
/// on the ball of radius `R = 1/H0` (up to the area of the unit sphere):
/// `y0 = int_0^R rho^(n-1) u drho`, `yp0 = -R^(n-1) u(R)`.
pub fn ball_initial_data(n: u32, h0: f64, lambda: f64) -> Result<(f64, f64)> {
    if n < 2 || !(h0 > 0.0) || !(lambda > 0.0) {
        return Err(Error::InvalidInput(format!(
            "ball data needs n >= 2, H0 > 0, lambda > 0 (got {n}, {h0}, {lambda})"
        )));
    }
    let nu = f64::from(n) / 2.0;
    let k = lambda.sqrt();
    let radius = 1.0 / h0;
    // rho^(n-1) u(rho) = rho^(n/2) J_{n/2-1}(k rho)
    let g = |rho: f64| -> Result<f64> {
        if rho == 0.0 {
            return Ok(0.0);
        }
        Ok(rho.powf(nu) * bessel_j(nu - 1.0, k * rho)?)
    };
    let m = BALL_QUADRATURE_PANELS;
    let h = radius / m as f64;
    let mut sum = g(0.0)? + g(radius)?;
    for i in 1..m {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * g(i as f64 * h)?;
    }
    let y0 = sum * h / 3.0;
    let yp0 = -radius.powf(nu) * bessel_j(nu - 1.0, k * radius)?;
    Ok((y0, yp0))
}

/// Writes `r,y_numeric,y_closed_form,residual` rows.
pub fn write_csv(sol: &OdeSolution, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "r,y_numeric,y_closed_form,residual")?;
    for (i, r) in sol.grid.iter().enumerate() {
        let y = sol.values[i];
        let c = sol.closed_form.get(i).copied().unwrap_or(f64::NAN);
        writeln!(w, "{r:.17e},{y:.17e},{c:.17e},{:.17e}", y - c)?;
    }
    Ok(())
}
