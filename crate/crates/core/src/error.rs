use thiserror::Error;

/// Errors raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {0} is outside the supported range |nu| <= 200")]
    OrderOutOfRange(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not reach tolerance {tol:e} within {terms} terms")]
    NonConvergence { terms: usize, tol: f64 },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("x = {x} lies within {guard:e} of a zero of J_{nu}")]
    NearPole { nu: f64, x: f64, guard: f64 },

    #[error("could not bracket zero number {k} of J_{nu}")]
    BracketFailure { nu: f64, k: usize },

    #[error("no root in (0, j_(n/2-1,1)) for n = {n}, c = {c}")]
    NoRootInInterval { n: u32, c: f64 },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("denominator (c-1)/c * nu_1p - sigma_p = {0} is not positive")]
    DenominatorNonpositive(f64),

    #[error("step size underflow at r = {r}")]
    StepUnderflow { r: f64 },

    #[error("eigensolver did not converge: {0}")]
    ConvergenceFailure(String),

    #[error("degenerate grid: {0}")]
    DegenerateGrid(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
