//! Invariant batteries behind `bessel-bounds verify <suite>`.

use std::f64::consts::PI;

use bessel_bounds::bounds::{self, GeometrySpec};
use bessel_bounds::ode::{self, OdeProblem};
use bessel_bounds::radial::{self, Bc, RadialProblem};
use bessel_bounds::special::{self, bessel_j};
use bessel_bounds::zeros::{self, ZeroRequest};
use bessel_bounds::BesselOrder;
use serde_json::{json, Value};

use crate::commands::{Failure, Outcome, Status};
use crate::output::Envelope;
use crate::{Suite, VerifyArgs};

pub fn suite_label(s: Suite) -> &'static str {
    match s {
        Suite::BesselIdentities => "bessel-identities",
        Suite::Zeros => "zeros",
        Suite::Ode => "ode",
        Suite::RobinBall => "robin-ball",
        Suite::BoundsConsistency => "bounds-consistency",
        Suite::Freitas => "freitas",
    }
}

/// One check: `observed <= tolerance` (an error) or `observed >= tolerance`
/// (a margin that must stay above a floor).
struct Check {
    name: &'static str,
    observed: f64,
    tolerance: f64,
    at_most: bool,
}

impl Check {
    fn at_most(name: &'static str, observed: f64, tolerance: f64) -> Self {
        Self {
            name,
            observed,
            tolerance,
            at_most: true,
        }
    }

    fn at_least(name: &'static str, observed: f64, tolerance: f64) -> Self {
        Self {
            name,
            observed,
            tolerance,
            at_most: false,
        }
    }

    /// Number of violations, which must be zero.
    fn none(name: &'static str, violations: usize) -> Self {
        Self::at_most(name, violations as f64, 0.0)
    }

    fn pass(&self) -> bool {
        if self.at_most {
            self.observed <= self.tolerance
        } else {
            self.observed >= self.tolerance
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "observed": self.observed,
            "tolerance": self.tolerance,
            "comparison": if self.at_most { "<=" } else { ">=" },
            "pass": self.pass(),
        })
    }
}

fn linspace(lo: f64, hi: f64, count: usize) -> impl Iterator<Item = f64> {
    (0..count).map(move |i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid).signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

type Checks = Result<Vec<Check>, Failure>;

pub fn run(a: &VerifyArgs, tol: Option<f64>) -> Result<Outcome, Failure> {
    if let Some(t) = tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Failure::Usage(format!("SPEC_TOL/--tol = {t} must be positive")));
        }
    }
    let mut env = Envelope::new(&format!("verify.{}", suite_label(a.suite)));
    let mut extra = serde_json::Map::new();
    let mut checks = match a.suite {
        Suite::BesselIdentities => bessel_identities()?,
        Suite::Zeros => zero_checks()?,
        Suite::Ode => ode_checks(a)?,
        Suite::RobinBall => robin_ball(a, &mut extra)?,
        Suite::BoundsConsistency => bounds_consistency()?,
        Suite::Freitas => freitas(a)?,
    };
    if let Some(t) = tol {
        // only error-type checks carry a tunable tolerance
        for c in checks.iter_mut().filter(|c| c.at_most && c.tolerance > 0.0) {
            c.tolerance = t;
        }
    }
    let pass = checks.iter().all(Check::pass);
    extra.insert("pass".into(), json!(pass));
    extra.insert(
        "checks".into(),
        Value::Array(checks.iter().map(Check::to_json).collect()),
    );
    env.value = Value::Object(extra);
    if let Some(t) = tol {
        env.inter("tolerance_override", t);
    }
    Ok(Outcome {
        env,
        status: if pass { Status::Ok } else { Status::VerifyFailed },
        csv: None,
    })
}

fn order(nu: f64) -> Result<BesselOrder, Failure> {
    Ok(BesselOrder::new(nu)?)
}

fn bessel_identities() -> Checks {
    let mut lommel = 0.0_f64;
    // half-integer and integer orders on |nu| <= 10, generic orders above -2.5
    let orders: Vec<f64> = (-20..=20)
        .map(|i| 0.5 * f64::from(i))
        .chain([-2.25, -1.3, 0.3, 1.7, 4.2, 7.9])
        .collect();
    for &nu in &orders {
        for x in linspace(0.05, 50.0, 100) {
            let (r1, r2) = special::lommel_residuals(order(nu)?, x)?;
            lommel = lommel.max(r1.max(r2) / (1.0_f64).max(1.0 / x));
        }
    }
    let mut recurrence = 0.0_f64;
    let mut derivative = 0.0_f64;
    for i in 0..=20 {
        let nu = 0.5 * f64::from(i);
        for x in linspace(0.1, 30.0, 150) {
            let (jm, j, jp) = (bessel_j(nu - 1.0, x)?, bessel_j(nu, x)?, bessel_j(nu + 1.0, x)?);
            let scale = jm.abs().max(j.abs()).max(jp.abs());
            recurrence = recurrence.max((jp - 2.0 * nu / x * j + jm).abs() / scale);
            let f = special::j_derivative_forms(order(nu)?, x)?;
            let hi = f.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v));
            let lo = f.iter().fold(f64::INFINITY, |m, v| m.min(*v));
            let s = f.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            if s > 0.0 {
                derivative = derivative.max((hi - lo) / s);
            }
        }
    }
    let mut trig = 0.0_f64;
    for x in linspace(0.1, 30.0, 300) {
        let c = (2.0 / (PI * x)).sqrt();
        let (s, co) = x.sin_cos();
        for (nu, closed) in [
            (0.5, c * s),
            (-0.5, c * co),
            (1.5, c * (s / x - co)),
            (-1.5, c * (-co / x - s)),
            (2.5, c * ((3.0 / (x * x) - 1.0) * s - 3.0 * co / x)),
        ] {
            trig = trig.max((bessel_j(nu, x)? - closed).abs() / c.max(closed.abs()));
        }
    }
    let mut interlace = 0;
    for i in 0..=12 {
        let nu = 0.5 * f64::from(i);
        let a = zeros::bessel_zeros(nu, 21)?;
        let b = zeros::bessel_zeros(nu + 1.0, 20)?;
        interlace += (0..20).filter(|&k| !(a[k] < b[k] && b[k] < a[k + 1])).count();
    }
    Ok(vec![
        Check::at_most("lommel-wronskian", lommel, 1e-10),
        Check::at_most("recurrence", recurrence, 1e-10),
        Check::at_most("derivative-forms", derivative, 1e-10),
        Check::at_most("half-integer-trig", trig, 1e-10),
        Check::none("zero-interlacing", interlace),
    ])
}

fn zero_checks() -> Checks {
    let j01 = zeros::bessel_zero(ZeroRequest::new(0.0, 1)?)?;
    let j_half = zeros::bessel_zero(ZeroRequest::new(0.5, 3)?)?;
    let mut airy = 0;
    for n in 1..=50 {
        let nu = f64::from(n);
        if zeros::bessel_zero(ZeroRequest::new(nu, 1)?)? < zeros::airy_floor(nu) {
            airy += 1;
        }
    }
    let mut vanish = 0.0_f64;
    for nu in [0.0, 1.0, 2.5, 7.0] {
        for z in zeros::bessel_zeros(nu, 20)? {
            vanish = vanish.max(bessel_j(nu, z)?.abs() / (2.0 / (PI * z)).sqrt());
        }
    }
    let t0 = bisect(|x| x.tan() + x, PI / 2.0 + 1e-9, PI - 1e-12);
    let t1 = bisect(|x| x.tan() - 2.0 * x, 0.5, PI / 2.0 - 1e-12);
    Ok(vec![
        Check::at_most("j_(0,1)", (j01 - 2.404825557695773).abs(), 1e-10),
        Check::at_most("j_(1/2,3) = 3 pi", rel(j_half, 3.0 * PI), 1e-12),
        Check::at_most("zeros-vanish", vanish, 1e-11),
        Check::none("airy-floor", airy),
        Check::at_most("tau0(3) vs tan x = -x", (zeros::tau0(3)? - t0).abs(), 1e-9),
        Check::at_most("tau1(3) vs tan x = 2x", (zeros::tau1(3)? - t1).abs(), 1e-9),
    ])
}

fn ode_checks(a: &VerifyArgs) -> Checks {
    let h0 = a.h0.unwrap_or(1.0);
    let dims: Vec<u32> = match a.dim {
        Some(n) => vec![n],
        None => (2..=5).collect(),
    };
    let mut sup = 0.0_f64;
    let mut ball = 0.0_f64;
    let mut perturbed = f64::INFINITY;
    let mut det = 0.0_f64;
    for &n in &dims {
        for lambda in [0.5, 1.0, 2.0] {
            let l = lambda * h0 * h0;
            let p = OdeProblem::new(n, h0, l, 1.0, -f64::from(n) * h0)?;
            let s = ode::integrate_ivp(&p)?;
            sup = sup.max(s.max_residual / s.max_abs.max(1.0));
            let c = ode::closed_form_coefficients(&p)?;
            det = det.max(rel(c.det, c.det_expected));
            let (y0, yp0) = ode::ball_initial_data(n, h0, l)?;
            let c = ode::closed_form_coefficients(&OdeProblem::new(n, h0, l, y0, yp0)?)?;
            ball = ball.max((c.b / c.a).abs());
            // |B|/|A| shrinks like beta^n for small beta, so the separation
            // floor is checked away from that regime
            if lambda >= 1.0 {
                let c = ode::closed_form_coefficients(&OdeProblem::new(n, h0, l, y0, 1.01 * yp0)?)?;
                perturbed = perturbed.min((c.b / c.a).abs());
            }
        }
    }
    Ok(vec![
        Check::at_most("numeric-vs-closed-form", sup, 1e-7),
        Check::at_most("determinant", det, 1e-10),
        Check::at_most("ball-data |B|/|A|", ball, 1e-8),
        Check::at_least("perturbed-data |B|/|A|", perturbed, 1e-4),
    ])
}

fn robin_ball(a: &VerifyArgs, extra: &mut serde_json::Map<String, Value>) -> Checks {
    let n = a.dim.unwrap_or(3);
    let h0 = a.h0.unwrap_or(1.0);
    let tau = a.tau.unwrap_or(1.0);
    let grid = a.grid.unwrap_or(4096);
    let closed = bounds::robin_ball_eigenvalue(n, h0, tau)?;
    let closed_value = closed.value.ok_or_else(|| {
        Failure::Core(bessel_bounds::Error::HypothesisViolated(
            closed.explanation.clone().unwrap_or_default(),
        ))
    })?;
    let spec = radial::solve_lowest(&RadialProblem::new(n, 1.0 / h0, Bc::Robin { tau }, grid)?)?;
    let oracle = spec.lambda_1_extrapolated;
    let root = zeros::char_root(n, tau / h0)?.root;
    let jz = zeros::bessel_zero(ZeroRequest::new(f64::from(n) / 2.0 - 1.0, 1)?)?;
    let negative = spec.eigenvector.iter().filter(|u| **u <= 0.0).count();
    extra.insert("closed_form".into(), json!(closed_value));
    extra.insert("oracle".into(), json!(oracle));
    extra.insert("char_root".into(), json!(root));
    extra.insert("order_estimate".into(), json!(spec.order_estimate));
    Ok(vec![
        Check::at_most("oracle-vs-closed-form", rel(oracle, closed_value), 1e-6),
        Check::at_least("sqrt(lambda) R below j_(n/2-1,1)", jz - oracle.sqrt() / h0, 0.0),
        Check::none("eigenvector-positivity", negative),
    ])
}

fn bounds_consistency() -> Checks {
    let mut reproduce = 0.0_f64;
    let mut alpha_gap = 0.0_f64;
    let mut unsatisfied = 0;
    let mut above_dirichlet = 0;
    for n in 2..=8u32 {
        for h0 in [0.5, 1.0, 2.0] {
            let geo = GeometrySpec::new(n, h0);
            let dirichlet = bounds::dirichlet_faber_krahn(&geo)?.value.unwrap_or(f64::NAN);
            for tau in [0.1, 1.0, 10.0] {
                let ball = bounds::robin_ball_eigenvalue(n, h0, tau)?;
                let thr = bounds::robin_threshold_bound(&geo, tau, ball.intermediates["x*"])?;
                match (ball.value, thr.value) {
                    (Some(b), Some(t)) => {
                        reproduce = reproduce.max(rel(t, b));
                        if b >= dirichlet {
                            above_dirichlet += 1;
                        }
                    }
                    _ => unsatisfied += 1,
                }
                alpha_gap = alpha_gap.max(rel(thr.intermediates["alpha"], tau / h0));
            }
        }
    }
    let mut dominance = 0;
    for n in 3..=50u32 {
        let (t0, t1) = (zeros::tau0(n)?, zeros::tau1(n)?);
        let nf = f64::from(n);
        if nf * t1 * t1 / (nf - 2.0) <= nf * t0 * t0 / (2.0 * (nf - 1.0)) {
            dominance += 1;
        }
    }
    let mut chain = 0;
    for n in 3..=20u32 {
        if !bounds::airy_chain(n, 1.0)?.holds {
            chain += 1;
        }
    }
    let q = bounds::quotient_lower_bound(&GeometrySpec::new(3, 1.0), 1e-8)?
        .value
        .unwrap_or(f64::NAN);
    Ok(vec![
        Check::at_most("robin-threshold reproduces ball", reproduce, 1e-9),
        Check::at_most("alpha = tau/H0 on the ball", alpha_gap, 1e-9),
        Check::none("unsatisfied hypotheses", unsatisfied),
        Check::none("robin ball above dirichlet", above_dirichlet),
        Check::none("yamabe over dirac dominance", dominance),
        Check::none("airy chain", chain),
        Check::at_most("quotient limit n H0", (q - 3.0).abs(), 1e-3),
    ])
}

fn freitas(a: &VerifyArgs) -> Checks {
    let nmax = a.nmax.unwrap_or(50);
    if nmax < 3 {
        return Err(Failure::Usage(format!("--nmax {nmax} must be >= 3")));
    }
    let mut failures = 0;
    let mut margin = f64::INFINITY;
    for n in 3..=nmax {
        let f = zeros::freitas_ratio_check(n)?;
        if !f.passes {
            failures += 1;
        }
        margin = margin.min(f.ratio_sq - f.floor);
    }
    Ok(vec![
        Check::none("freitas", failures),
        Check::at_least("min ratio margin", margin, 0.0),
    ])
}
