use bessel_bounds::bounds::{self, BoundReport, CurvatureInputs, GeometrySpec};
use bessel_bounds::ode::{self, OdeProblem, ZeroCase};
use bessel_bounds::radial::{self, Bc, RadialProblem};
use bessel_bounds::special::{self, BowmanParams};
use bessel_bounds::zeros::{self, ZeroRequest};
use bessel_bounds::{BesselOrder, Error};
use serde_json::{json, Value};

use crate::output::Envelope;
use crate::{
    BcName, BesselArgs, BesselOp, BoundArgs, BoundName, CharRootArgs, Cli, Command, OdeArgs,
    OracleArgs, ZeroArgs,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Input,
    Hypothesis,
    VerifyFailed,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Input => 1,
            Status::Hypothesis => 2,
            Status::VerifyFailed => 3,
        }
    }
}

pub struct Outcome {
    pub env: Envelope,
    pub status: Status,
    /// Table replacing the key/value CSV when the command has one.
    pub csv: Option<String>,
}

impl Outcome {
    pub fn ok(env: Envelope) -> Self {
        Self {
            env,
            status: Status::Ok,
            csv: None,
        }
    }
}

/// Failure raised while running a command.
pub enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Run = std::result::Result<Outcome, Failure>;

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::OrderOutOfRange(_) => "order-out-of-range",
        Error::Domain(_) => "domain",
        Error::NonConvergence { .. } => "non-convergence",
        Error::Overflow(_) => "overflow",
        Error::NearPole { .. } => "near-pole",
        Error::BracketFailure { .. } => "bracket-failure",
        Error::NoRootInInterval { .. } => "no-root-in-interval",
        Error::HypothesisViolated(_) => "hypothesis-violated",
        Error::Dimension(_) => "dimension",
        Error::DenominatorNonpositive(_) => "denominator-nonpositive",
        Error::StepUnderflow { .. } => "step-underflow",
        Error::ConvergenceFailure(_) => "convergence-failure",
        Error::DegenerateGrid(_) => "degenerate-grid",
        Error::InvalidInput(_) => "invalid-input",
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let (op, inputs) = describe(&cli.command);
    let result = match &cli.command {
        Command::Bessel(a) => bessel(a, cli.tol),
        Command::Zero(a) => zero(a),
        Command::CharRoot(a) => char_root(a),
        Command::Bound(a) => bound(a),
        Command::Ode(a) => ode_cmd(a),
        Command::Oracle(a) => oracle(a),
        Command::Verify(a) => crate::verify::run(a, cli.tol),
    };
    match result {
        Ok(mut o) => {
            o.env.inputs = inputs;
            o
        }
        Err(f) => {
            let mut env = Envelope::new(&op);
            env.inputs = inputs;
            let (status, err) = match f {
                Failure::Core(e) => {
                    let status = match e {
                        Error::HypothesisViolated(_) | Error::DenominatorNonpositive(_) => {
                            Status::Hypothesis
                        }
                        _ => Status::Input,
                    };
                    (status, json!({"kind": error_kind(&e), "message": e.to_string()}))
                }
                Failure::Usage(m) => (Status::Input, json!({"kind": "usage", "message": m})),
            };
            env.error = Some(err);
            Outcome {
                env,
                status,
                csv: None,
            }
        }
    }
}

fn opt<T: Into<Value> + Copy>(v: Option<T>) -> Value {
    v.map_or(Value::Null, Into::into)
}

/// Operation name and the parsed inputs, echoed in every result.
fn describe(cmd: &Command) -> (String, serde_json::Map<String, Value>) {
    let (op, v) = match cmd {
        Command::Bessel(a) => {
            let mut v = json!({"nu": a.nu, "x": a.x});
            if a.op == BesselOp::Bowman {
                v["alpha"] = opt(a.alpha);
                v["beta"] = opt(a.beta);
                v["gamma"] = opt(a.gamma);
                v["a"] = opt(a.a);
                v["b"] = opt(a.b);
            }
            (format!("bessel.{}", bessel_op_name(a.op)), v)
        }
        Command::Zero(a) => ("zero".into(), json!({"nu": a.nu, "k": a.k})),
        Command::CharRoot(a) => ("char-root".into(), json!({"dim": a.dim, "c": a.c})),
        Command::Bound(a) => {
            let mut m = serde_json::Map::new();
            for (k, v) in bound_fields(a) {
                if !v.is_null() {
                    m.insert(k.to_string(), v);
                }
            }
            (format!("bound.{}", bound_label(a.name)), Value::Object(m))
        }
        Command::Ode(a) => (
            "ode".into(),
            json!({"dim": a.dim, "h0": a.h0, "lambda": a.lambda, "y0": opt(a.y0),
                   "yp0": opt(a.yp0), "ball": a.ball, "r_max": opt(a.r_max), "forcing": a.forcing}),
        ),
        Command::Oracle(a) => (
            "oracle".into(),
            json!({"dim": a.dim, "radius": a.radius, "bc": bc_label(a.bc), "tau": opt(a.tau),
                   "grid": a.grid, "sweep": a.sweep.clone()}),
        ),
        Command::Verify(a) => (
            format!("verify.{}", crate::verify::suite_label(a.suite)),
            json!({"dim": opt(a.dim), "h0": opt(a.h0), "tau": opt(a.tau), "grid": opt(a.grid),
                   "nmax": opt(a.nmax)}),
        ),
    };
    let map = match v {
        Value::Object(m) => m.into_iter().filter(|(_, x)| !x.is_null()).collect(),
        _ => unreachable!(),
    };
    (op, map)
}

fn bessel_op_name(op: BesselOp) -> &'static str {
    match op {
        BesselOp::J => "j",
        BesselOp::Y => "y",
        BesselOp::Dj => "dj",
        BesselOp::Ratio => "ratio",
        BesselOp::Lommel => "lommel",
        BesselOp::Bowman => "bowman",
    }
}

fn bc_label(bc: BcName) -> &'static str {
    match bc {
        BcName::Dirichlet => "dirichlet",
        BcName::Neumann => "neumann",
        BcName::Robin => "robin",
    }
}

fn bessel(a: &BesselArgs, tol: Option<f64>) -> Run {
    if a.op != BesselOp::Bowman {
        let extra = [a.alpha, a.beta, a.gamma, a.a, a.b];
        if extra.iter().any(Option::is_some) {
            return Err(Failure::Usage(
                "--alpha/--beta/--gamma/--a/--b apply to `bessel bowman` only".into(),
            ));
        }
    }
    let order = BesselOrder::new(a.nu)?;
    let mut env = Envelope::new(&format!("bessel.{}", bessel_op_name(a.op)));
    let value_meta = |env: &mut Envelope, v: special::BesselValue| {
        env.value = json!(v.value);
        env.inter("abs_err_estimate", v.abs_err_estimate)
            .inter("terms_used", v.terms_used)
            .inter("method", format!("{:?}", v.method));
    };
    match a.op {
        BesselOp::J => {
            let v = match tol {
                Some(t) => special::eval_j_tol(order, a.x, t)?,
                None => special::eval_j(order, a.x)?,
            };
            value_meta(&mut env, v);
        }
        BesselOp::Y => {
            let v = match tol {
                Some(t) => special::eval_y_tol(order, a.x, t)?,
                None => special::eval_y(order, a.x)?,
            };
            value_meta(&mut env, v);
        }
        BesselOp::Dj => {
            env.value = json!(special::eval_j_derivative(order, a.x)?);
            let f = special::j_derivative_forms(order, a.x)?;
            env.inter("half_difference", f[0])
                .inter("lower_order", f[1])
                .inter("upper_order", f[2]);
        }
        BesselOp::Ratio => {
            env.value = json!(special::ratio_next_over_current(order, a.x)?);
        }
        BesselOp::Lommel => {
            let (r1, r2) = special::lommel_residuals(order, a.x)?;
            env.value = json!({"cross_product": r1, "wronskian": r2});
            env.inter("tolerance", 1e-10 * (1.0_f64).max(1.0 / a.x));
        }
        BesselOp::Bowman => {
            let need = |v: Option<f64>, name: &str| {
                v.ok_or_else(|| Failure::Usage(format!("`bessel bowman` needs --{name}")))
            };
            let p = BowmanParams {
                alpha: need(a.alpha, "alpha")?,
                beta: need(a.beta, "beta")?,
                gamma: need(a.gamma, "gamma")?,
                m: order,
                a: a.a.unwrap_or(1.0),
                b: a.b.unwrap_or(0.0),
            };
            env.value = json!(special::bowman_solution(&p, a.x)?);
            let (pc, qc) = p.coefficients(a.x);
            env.inter("p", pc).inter("q", qc).inter(
                "second_solution",
                if order.is_integer() { "Y_m" } else { "J_-m" },
            );
        }
    }
    Ok(Outcome::ok(env))
}

fn zero(a: &ZeroArgs) -> Run {
    let z = zeros::bessel_zero(ZeroRequest::new(a.nu, a.k)?)?;
    let mut env = Envelope::new("zero");
    env.value = json!(z);
    env.inter("mcmahon", zeros::mcmahon(a.nu.max(0.0), a.k));
    if a.nu > 0.0 {
        env.inter("airy_floor", zeros::airy_floor(a.nu));
    }
    Ok(Outcome::ok(env))
}

fn char_root(a: &CharRootArgs) -> Run {
    let r = zeros::char_root(a.dim, a.c)?;
    let mut env = Envelope::new("char-root");
    env.value = json!(r.root);
    env.inter("root", r.root)
        .inter("bracket_lo", r.bracket.0)
        .inter("bracket_hi", r.bracket.1)
        .inter("residual", r.residual);
    Ok(Outcome::ok(env))
}

fn bound_label(name: BoundName) -> &'static str {
    match name {
        BoundName::Quotient => "quotient",
        BoundName::Isoperimetric => "isoperimetric",
        BoundName::Dirichlet => "dirichlet",
        BoundName::RobinThreshold => "robin-threshold",
        BoundName::RobinBall => "robin-ball",
        BoundName::Dirac => "dirac",
        BoundName::Mit => "mit",
        BoundName::Yamabe => "yamabe",
        BoundName::DiracConformal => "dirac-conformal",
        BoundName::Pform => "pform",
        BoundName::PformBall => "pform-ball",
        BoundName::Gap => "gap",
        BoundName::GallotMeyer => "gallot-meyer",
        BoundName::Cotangent => "cotangent",
    }
}

fn bound_fields(a: &BoundArgs) -> [(&'static str, Value); 14] {
    [
        ("dim", opt(a.dim)),
        ("h0", opt(a.h0)),
        ("k", opt(a.k)),
        ("radius", opt(a.radius)),
        ("lambda", opt(a.lambda)),
        ("tau", opt(a.tau)),
        ("tau0", opt(a.tau0)),
        ("min-scalar", opt(a.min_scalar)),
        ("gamma", opt(a.gamma)),
        ("sigma-p", opt(a.sigma_p)),
        ("p", opt(a.p)),
        ("im-lambda", opt(a.im_lambda)),
        ("nu1p", opt(a.nu1p)),
        ("inf-w-minus-t", opt(a.inf_w_minus_t)),
    ]
}

/// `(required, optional)` flags of each bound.
fn bound_flags(name: BoundName) -> (&'static [&'static str], &'static [&'static str]) {
    const GEO: &[&str] = &["k"];
    match name {
        BoundName::Quotient => (&["dim", "h0", "lambda"], GEO),
        BoundName::Isoperimetric | BoundName::Dirichlet => (&["dim", "h0"], GEO),
        BoundName::RobinThreshold => (&["dim", "h0", "tau", "tau0"], GEO),
        BoundName::RobinBall => (&["dim", "h0", "tau"], &[]),
        BoundName::Dirac => (&["dim", "h0"], &["k", "min-scalar"]),
        BoundName::Mit => (&["dim", "h0", "im-lambda"], &["k", "min-scalar"]),
        BoundName::Yamabe | BoundName::DiracConformal => (&["dim", "h0"], &["k", "min-scalar"]),
        BoundName::Pform => (&["dim", "sigma-p", "p", "tau", "tau0"], &["k", "h0"]),
        BoundName::PformBall => (&["dim", "sigma-p", "p", "tau"], &["k", "h0"]),
        BoundName::Gap => (&["p", "inf-w-minus-t"], &["sigma-p"]),
        BoundName::GallotMeyer => (&["dim", "p", "gamma", "tau"], &["k", "h0", "sigma-p", "nu1p"]),
        BoundName::Cotangent => (&["dim", "lambda", "radius"], &["k", "h0"]),
    }
}

fn bound(a: &BoundArgs) -> Run {
    let (required, optional) = bound_flags(a.name);
    let label = bound_label(a.name);
    for (k, v) in bound_fields(a) {
        let given = !v.is_null();
        if required.contains(&k) && !given {
            return Err(Failure::Usage(format!("`bound {label}` needs --{k}")));
        }
        if given && !required.contains(&k) && !optional.contains(&k) {
            return Err(Failure::Usage(format!("`bound {label}` does not take --{k}")));
        }
    }
    let mut geo = GeometrySpec::new(a.dim.unwrap_or(0), a.h0.unwrap_or(0.0)).with_k(a.k.unwrap_or(0.0));
    if let Some(r) = a.radius {
        geo = geo.with_radius(r);
    }
    let cur = CurvatureInputs {
        min_scalar: a.min_scalar.unwrap_or(0.0),
        gamma: a.gamma.unwrap_or(0.0),
        sigma_p: a.sigma_p.unwrap_or(0.0),
        p: a.p.unwrap_or(1),
        tau: a.tau.unwrap_or(0.0),
        im_lambda: a.im_lambda.unwrap_or(0.0),
        nu_1p: a.nu1p.unwrap_or(0.0),
        inf_w_minus_t: a.inf_w_minus_t.unwrap_or(0.0),
    };
    let v = |x: Option<f64>| x.unwrap_or(0.0);
    let report = match a.name {
        BoundName::Quotient => bounds::quotient_lower_bound(&geo, v(a.lambda))?,
        BoundName::Isoperimetric => bounds::isoperimetric_bound(&geo)?,
        BoundName::Dirichlet => bounds::dirichlet_faber_krahn(&geo)?,
        BoundName::RobinThreshold => bounds::robin_threshold_bound(&geo, v(a.tau), v(a.tau0))?,
        BoundName::RobinBall => bounds::robin_ball_eigenvalue(geo.n, geo.h0, v(a.tau))?,
        BoundName::Dirac => bounds::dirac_bound(&geo, &cur)?,
        BoundName::Mit => bounds::mit_bound(&geo, &cur)?,
        BoundName::Yamabe => bounds::yamabe_bound(&geo, &cur)?,
        BoundName::DiracConformal => bounds::dirac_conformal_bound(&geo, &cur)?,
        BoundName::Pform => bounds::pform_bound(&geo, &cur, v(a.tau0))?,
        BoundName::PformBall => bounds::pform_ball_comparison(&geo, &cur)?,
        BoundName::Gap => bounds::gap_bound(&cur)?,
        BoundName::GallotMeyer => bounds::gallot_meyer_bound(&geo, &cur)?,
        BoundName::Cotangent => bounds::cotangent_bound(&geo, v(a.lambda))?,
    };
    Ok(report_outcome(&format!("bound.{label}"), report))
}

/// Wraps a bound report; a missing value means a checked hypothesis failed.
pub fn report_outcome(op: &str, r: BoundReport) -> Outcome {
    let mut env = Envelope::new(op);
    env.value = opt(r.value);
    env.intermediates = r
        .intermediates
        .iter()
        .map(|(k, v)| (k.clone(), json!(v)))
        .collect();
    env.inter("strict", r.strict)
        .inter("informative", r.informative)
        .inter("equality_case", r.equality_case.clone());
    if let Some(e) = &r.explanation {
        env.inter("explanation", e.clone());
    }
    env.hypotheses = serde_json::to_value(&r.hypotheses).expect("hypotheses serialize");
    env.warnings = r.warnings.clone();
    let status = if r.value.is_some() {
        Status::Ok
    } else {
        Status::Hypothesis
    };
    Outcome {
        env,
        status,
        csv: None,
    }
}

fn ode_cmd(a: &OdeArgs) -> Run {
    let (y0, yp0) = if a.ball {
        ode::ball_initial_data(a.dim, a.h0, a.lambda)?
    } else {
        (a.y0.unwrap_or(0.0), a.yp0.unwrap_or(0.0))
    };
    let prob = match a.r_max {
        Some(r) => OdeProblem::with_r_max(a.dim, a.h0, a.lambda, y0, yp0, r)?,
        None => OdeProblem::new(a.dim, a.h0, a.lambda, y0, yp0)?,
    };
    let coef = ode::closed_form_coefficients(&prob)?;
    let sol = ode::integrate_forced(&prob, a.forcing)?;
    let case = ode::first_zero(&sol)?;
    let mut env = Envelope::new("ode");
    let (kind, r0, theta) = match case {
        ZeroCase::Interior { r0, theta } => ("interior", Some(r0), Some(theta)),
        ZeroCase::Boundary { r0, theta } => ("boundary", Some(r0), Some(theta)),
        ZeroCase::Absent => ("absent", None, None),
    };
    env.value = json!({"A": coef.a, "B": coef.b, "R0": opt(r0), "theta": opt(theta), "case": kind});
    env.inter("y0", y0)
        .inter("yp0", yp0)
        .inter("branch", format!("{:?}", coef.branch).to_lowercase())
        .inter("det", coef.det)
        .inter("det_expected", coef.det_expected)
        .inter("printed_a", coef.printed_a)
        .inter("printed_b", coef.printed_b)
        .inter("printed_ratio", coef.printed_ratio)
        .inter("steps", sol.grid.len() - 1)
        .inter("steps_rejected", sol.steps_rejected)
        .inter("max_abs", sol.max_abs);
    if a.forcing == 0.0 {
        env.inter("max_residual", sol.max_residual);
    }
    if (coef.printed_ratio - 1.0).abs() > 1e-6 {
        env.warnings.push(format!(
            "explicit coefficient formulas differ from the solved 2x2 system by the factor {}",
            crate::output::format_f64(coef.printed_ratio)
        ));
    }
    let mut csv = Vec::new();
    ode::write_csv(&sol, &mut csv).expect("write to memory");
    Ok(Outcome {
        env,
        status: Status::Ok,
        csv: Some(String::from_utf8(csv).expect("utf-8 CSV")),
    })
}

fn oracle(a: &OracleArgs) -> Run {
    let mut env = Envelope::new("oracle");
    let mut csv = Vec::new();
    if let Some(taus) = &a.sweep {
        let rows = radial::robin_sweep(a.dim, a.radius, taus, a.grid)?;
        env.value = json!(rows.iter().map(|(t, l)| json!([t, l])).collect::<Vec<_>>());
        radial::write_sweep_csv(&rows, &mut csv).expect("write to memory");
    } else {
        let bc = match (a.bc, a.tau) {
            (BcName::Robin, Some(tau)) => Bc::Robin { tau },
            (BcName::Robin, None) => return Err(Failure::Usage("--bc robin needs --tau".into())),
            (_, Some(_)) => return Err(Failure::Usage("--tau applies to --bc robin only".into())),
            (BcName::Dirichlet, None) => Bc::Dirichlet,
            (BcName::Neumann, None) => Bc::Neumann,
        };
        let s = radial::solve_lowest(&RadialProblem::new(a.dim, a.radius, bc, a.grid)?)?;
        env.value = json!(s.lambda_1_extrapolated);
        env.inter("lambda_1", s.lambda_1)
            .inter("lambda_1_fine", s.lambda_1_fine)
            .inter("order_estimate", s.order_estimate);
        radial::write_eigenvector_csv(&s, &mut csv).expect("write to memory");
    }
    Ok(Outcome {
        env,
        status: Status::Ok,
        csv: Some(String::from_utf8(csv).expect("utf-8 CSV")),
    })
}
