//! `bessel-bounds`: command-line front end for Bessel functions, zeros,
//! eigenvalue bounds, the radial comparison ODE and the ball oracle.

mod commands;
mod output;
mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

const SCHEMA: &str = "output schema: {\"op\", \"inputs\", \"value\", \"intermediates\", \"hypotheses\", \"warnings\"} \
(plus \"error\" on failure); exit codes: 0 ok, 1 input error, 2 hypothesis violated, 3 verification failed";

const ENV_HELP: &str = "Environment:\n  SPEC_TOL  overrides default tolerances: the series tolerance of `bessel j|y` \
and every check tolerance of `verify` (same as --tol)";

#[derive(Debug, Parser)]
#[command(name = "bessel-bounds", version, about, after_help = ENV_HELP)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub output: Format,

    /// Tolerance override.
    #[arg(long, env = "SPEC_TOL", global = true)]
    pub tol: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate J, Y, J', J_{nu+1}/J_nu, the cross-product residuals or a
    /// generalised Bessel solution.
    Bessel(BesselArgs),
    /// k-th positive zero of J_nu.
    Zero(ZeroArgs),
    /// First root of x J_{n/2}(x) / J_{n/2-1}(x) = c.
    CharRoot(CharRootArgs),
    /// Closed-form eigenvalue bound.
    Bound(BoundArgs),
    /// Integrate the radial comparison equation. CSV columns:
    /// r,y_numeric,y_closed_form,residual.
    Ode(OdeArgs),
    /// Finite-volume eigensolver on the ball. CSV columns: r,u or, with
    /// --sweep, tau,lambda_1.
    Oracle(OracleArgs),
    /// Run an invariant battery.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BesselOp {
    J,
    Y,
    Dj,
    Ratio,
    Lommel,
    Bowman,
}

#[derive(Debug, Args)]
pub struct BesselArgs {
    #[arg(value_enum)]
    pub op: BesselOp,
    /// Order nu (the Bessel order m for `bowman`).
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long)]
    pub x: f64,
    /// bowman: power of x in front.
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// bowman: argument scale.
    #[arg(long)]
    pub beta: Option<f64>,
    /// bowman: argument exponent.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// bowman: coefficient of J_m.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// bowman: coefficient of the second solution.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ZeroArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
}

#[derive(Debug, Args)]
pub struct CharRootArgs {
    #[arg(long)]
    pub dim: u32,
    #[arg(long, allow_negative_numbers = true)]
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundName {
    Quotient,
    Isoperimetric,
    Dirichlet,
    RobinThreshold,
    RobinBall,
    Dirac,
    Mit,
    Yamabe,
    DiracConformal,
    Pform,
    PformBall,
    Gap,
    GallotMeyer,
    Cotangent,
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(value_enum)]
    pub name: BoundName,
    #[arg(long)]
    pub dim: Option<u32>,
    /// Lower bound on the mean curvature of the boundary.
    #[arg(long, allow_negative_numbers = true)]
    pub h0: Option<f64>,
    /// Ricci comparison constant; only 0 is supported.
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<f64>,
    /// Inner radius.
    #[arg(long)]
    pub radius: Option<f64>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub tau0: Option<f64>,
    /// Minimum of the scalar curvature.
    #[arg(long, allow_negative_numbers = true)]
    pub min_scalar: Option<f64>,
    /// Lower bound on the curvature term of the Bochner formula.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Lower bound on the p-curvature of the boundary.
    #[arg(long, allow_negative_numbers = true)]
    pub sigma_p: Option<f64>,
    /// Form degree.
    #[arg(long)]
    pub p: Option<u32>,
    /// |Im lambda| for the MIT bag condition.
    #[arg(long, allow_negative_numbers = true)]
    pub im_lambda: Option<f64>,
    /// First eigenvalue of the Dirichlet-to-Neumann map on p-forms.
    #[arg(long, allow_negative_numbers = true)]
    pub nu1p: Option<f64>,
    /// Infimum of W - T on the boundary.
    #[arg(long, allow_negative_numbers = true)]
    pub inf_w_minus_t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OdeArgs {
    #[arg(long)]
    pub dim: u32,
    #[arg(long)]
    pub h0: f64,
    #[arg(long)]
    pub lambda: f64,
    /// y(0); omit with --ball.
    #[arg(long, allow_negative_numbers = true, required_unless_present = "ball")]
    pub y0: Option<f64>,
    /// y'(0); omit with --ball.
    #[arg(long, allow_negative_numbers = true, required_unless_present = "ball")]
    pub yp0: Option<f64>,
    /// Use the initial data generated by the ball of radius 1/H0.
    #[arg(long, conflicts_with_all = ["y0", "yp0"])]
    pub ball: bool,
    /// End of the integration interval, below 1/H0.
    #[arg(long)]
    pub r_max: Option<f64>,
    /// Constant forcing added to the right-hand side.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub forcing: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BcName {
    Dirichlet,
    Neumann,
    Robin,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub dim: u32,
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    #[arg(long, value_enum, default_value_t = BcName::Dirichlet)]
    pub bc: BcName,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long, default_value_t = 4096)]
    pub grid: usize,
    /// Comma-separated ascending Robin parameters.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["tau", "bc"])]
    pub sweep: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    BesselIdentities,
    Zeros,
    Ode,
    RobinBall,
    BoundsConsistency,
    Freitas,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(long)]
    pub dim: Option<u32>,
    #[arg(long)]
    pub h0: Option<f64>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub grid: Option<usize>,
    /// Largest dimension for the freitas suite.
    #[arg(long)]
    pub nmax: Option<u32>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            if code != 0 {
                eprintln!("{SCHEMA}");
            }
            return ExitCode::from(code);
        }
    };
    let outcome = commands::run(&cli);
    let text = match (cli.output, &outcome.csv) {
        (Format::Csv, Some(csv)) => csv.clone(),
        (Format::Csv, None) => output::to_csv(&outcome.env),
        (Format::Plain, _) => output::to_plain(&outcome.env),
        (Format::Json, _) => output::to_json(&outcome.env.to_value()) + "\n",
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    if let Some(e) = &outcome.env.error {
        eprintln!("error: {}", e["message"].as_str().unwrap_or_default());
        if outcome.status == commands::Status::Input {
            eprintln!("{SCHEMA}");
        }
    }
    ExitCode::from(outcome.status.code())
}
