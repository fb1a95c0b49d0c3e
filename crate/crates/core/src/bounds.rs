//! Closed-form eigenvalue lower bounds on manifolds with boundary whose mean
//! curvature is bounded below by `H0 > 0` (flat comparison case `K = 0`).
//!
//! Every calculator returns a [`BoundReport`] listing the hypotheses it
//! relies on. Hypotheses that live on the manifold itself (Ricci sign,
//! curvature operator, spin structure) cannot be checked from scalars and
//! are recorded as caller-asserted. When a checkable hypothesis fails the
//! report carries no value and an explanation instead.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{bessel_j, MAX_ORDER};
use crate::zeros::{
    airy_floor, alpha_constant, bessel_zero, char_root, tau0, tau1, ZeroRequest,
};

/// Dimension, mean-curvature floor, Ricci comparison constant and
/// (optionally) inner radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeometrySpec {
    pub n: u32,
    pub h0: f64,
    pub k: f64,
    pub radius: Option<f64>,
}

impl GeometrySpec {
    pub fn new(n: u32, h0: f64) -> Self {
        Self {
            n,
            h0,
            k: 0.0,
            radius: None,
        }
    }

    pub fn with_radius(mut self, r: f64) -> Self {
        self.radius = Some(r);
        self
    }

    pub fn with_k(mut self, k: f64) -> Self {
        self.k = k;
        self
    }

    fn nf(&self) -> f64 {
        f64::from(self.n)
    }

    fn validate(&self, need_h0: bool) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Dimension(format!(
                "dimension n = {} must be >= 2",
                self.n
            )));
        }
        if self.nf() / 2.0 > MAX_ORDER {
            return Err(Error::Dimension(format!(
                "dimension n = {} exceeds the supported range",
                self.n
            )));
        }
        if !self.h0.is_finite() || (need_h0 && self.h0 <= 0.0) {
            return Err(Error::InvalidInput(format!(
                "mean-curvature floor H0 = {} must be positive",
                self.h0
            )));
        }
        if self.k != 0.0 {
            return Err(Error::HypothesisViolated(format!(
                "only the flat comparison K = 0 is supported, got K = {}",
                self.k
            )));
        }
        if let Some(r) = self.radius {
            if !(r > 0.0) {
                return Err(Error::InvalidInput(format!("inner radius {r} must be positive")));
            }
            if self.h0 > 0.0 && r > 1.0 / self.h0 {
                return Err(Error::InvalidInput(format!(
                    "inner radius {r} exceeds 1/H0 = {}",
                    1.0 / self.h0
                )));
            }
        }
        Ok(())
    }
}

/// Scalar curvature data supplied by the caller.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureInputs {
    pub min_scalar: f64,
    pub gamma: f64,
    pub sigma_p: f64,
    pub p: u32,
    pub tau: f64,
    pub im_lambda: f64,
    pub nu_1p: f64,
    pub inf_w_minus_t: f64,
}

impl Default for CurvatureInputs {
    fn default() -> Self {
        Self {
            min_scalar: 0.0,
            gamma: 0.0,
            sigma_p: 0.0,
            p: 1,
            tau: 0.0,
            im_lambda: 0.0,
            nu_1p: 0.0,
            inf_w_minus_t: 0.0,
        }
    }
}

impl CurvatureInputs {
    fn check_degree(&self, n: u32) -> Result<()> {
        if self.p < 1 || self.p >= n {
            return Err(Error::InvalidInput(format!(
                "form degree p = {} must lie in [1, n-1] = [1, {}]",
                self.p,
                n - 1
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub satisfied: bool,
    pub detail: String,
    /// True when the condition concerns the manifold and is taken on trust.
    pub caller_asserted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub bound_name: String,
    pub value: Option<f64>,
    pub strict: bool,
    pub informative: bool,
    pub hypotheses: Vec<Hypothesis>,
    pub equality_case: String,
    pub intermediates: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
    pub explanation: Option<String>,
}

impl BoundReport {
    fn new(name: &str) -> Self {
        Self {
            bound_name: name.to_string(),
            value: None,
            strict: false,
            informative: true,
            hypotheses: Vec::new(),
            equality_case: String::new(),
            intermediates: BTreeMap::new(),
            warnings: Vec::new(),
            explanation: None,
        }
    }

    fn check(&mut self, name: &str, satisfied: bool, detail: impl Into<String>) -> &mut Self {
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            satisfied,
            detail: detail.into(),
            caller_asserted: false,
        });
        self
    }

    fn assume(&mut self, name: &str, detail: &str) -> &mut Self {
        self.hypotheses.push(Hypothesis {
            name: name.to_string(),
            satisfied: true,
            detail: detail.to_string(),
            caller_asserted: true,
        });
        self
    }

    fn note(&mut self, key: &str, v: f64) -> &mut Self {
        self.intermediates.insert(key.to_string(), v);
        self
    }

    fn equality(&mut self, text: &str) -> &mut Self {
        self.equality_case = text.to_string();
        self
    }

    /// Sets the value unless a checked hypothesis failed, in which case the
    /// explanation lists the failures.
    fn finish(mut self, value: f64, strict: bool) -> Self {
        self.strict = strict;
        let failed: Vec<String> = self
            .hypotheses
            .iter()
            .filter(|h| !h.satisfied)
            .map(|h| format!("{} ({})", h.name, h.detail))
            .collect();
        if failed.is_empty() {
            self.value = Some(value);
            if value <= 0.0 {
                self.informative = false;
                self.warnings
                    .push(format!("bound value {value} is not positive"));
            }
        } else {
            self.value = None;
            self.informative = false;
            self.explanation = Some(format!("unsatisfied: {}", failed.join("; ")));
        }
        self
    }

    pub fn is_satisfied(&self) -> bool {
        self.hypotheses.iter().all(|h| h.satisfied)
    }
}

/// Relative slack for thresholds met with equality, where `alpha` carries
/// rounding from the Bessel quotient.
pub const EQUALITY_SLACK: f64 = 1.0e-12;

const RICCI: &str = "Ric >= 0";
const RICCI_DETAIL: &str = "nonnegative Ricci curvature of M (not checkable from scalars)";

fn first_zero(nu: f64) -> Result<f64> {
    bessel_zero(ZeroRequest::new(nu, 1)?)
}

/// Coefficient `sqrt(l) J_{n/2-1}(sqrt(l)/H0) / J_{n/2}(sqrt(l)/H0)` in
/// `int_bd f >= coefficient * int_M f`, valid when `sqrt(l)/H0 < j_{n/2,1}`.
pub fn quotient_lower_bound(geo: &GeometrySpec, lambda: f64) -> Result<BoundReport> {
    geo.validate(true)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("lambda = {lambda} must be positive")));
    }
    let nu = geo.nf() / 2.0;
    let x = lambda.sqrt() / geo.h0;
    let jn = first_zero(nu)?;
    if x >= jn {
        return Err(Error::HypothesisViolated(format!(
            "sqrt(lambda)/H0 = {x} must be below j_({nu},1) = {jn}"
        )));
    }
    let jm = first_zero(nu - 1.0)?;
    let value = lambda.sqrt() * bessel_j(nu - 1.0, x)? / bessel_j(nu, x)?;
    let mut r = BoundReport::new("quotient");
    r.assume(RICCI, RICCI_DETAIL)
        .check(
            "sqrt(lambda)/H0 < j_(n/2,1)",
            true,
            format!("{x} < {jn}"),
        )
        .note("x", x)
        .note("j_(n/2,1)", jn)
        .note("j_(n/2-1,1)", jm)
        .equality("M isometric to the geodesic ball of radius 1/H0");
    if x >= jm {
        r.warnings.push(format!(
            "sqrt(lambda)/H0 = {x} lies past j_(n/2-1,1) = {jm}: the coefficient is not positive"
        ));
    }
    Ok(r.finish(value, false))
}

/// `Vol(bd M) / Vol(M) >= n H0`.
pub fn isoperimetric_bound(geo: &GeometrySpec) -> Result<BoundReport> {
    geo.validate(true)?;
    let mut r = BoundReport::new("isoperimetric");
    r.assume(RICCI, RICCI_DETAIL)
        .equality("geodesic ball of radius 1/H0");
    Ok(r.finish(geo.nf() * geo.h0, false))
}

/// Dirichlet: `lambda_1 >= H0^2 j_{n/2-1,1}^2`.
pub fn dirichlet_faber_krahn(geo: &GeometrySpec) -> Result<BoundReport> {
    geo.validate(true)?;
    let j = first_zero(geo.nf() / 2.0 - 1.0)?;
    let mut r = BoundReport::new("dirichlet");
    r.assume(RICCI, RICCI_DETAIL)
        .note("j_(n/2-1,1)", j)
        .equality("geodesic ball B_H0 of radius 1/H0");
    Ok(r.finish((geo.h0 * j).powi(2), false))
}

/// Robin: `lambda_1(tau) >= H0^2 tau0^2` whenever `tau >= alpha H0`.
pub fn robin_threshold_bound(geo: &GeometrySpec, tau: f64, tau0: f64) -> Result<BoundReport> {
    geo.validate(true)?;
    if !tau.is_finite() {
        return Err(Error::InvalidInput(format!("tau = {tau} is not finite")));
    }
    let alpha = alpha_constant(geo.n, tau0)?;
    let threshold = alpha.value * geo.h0;
    let mut r = BoundReport::new("robin-threshold");
    r.assume(RICCI, RICCI_DETAIL)
        .check("tau > 0", tau > 0.0, format!("tau = {tau}"))
        .check(
            "tau >= alpha H0",
            tau >= threshold - EQUALITY_SLACK * threshold.abs(),
            format!("tau = {tau}, alpha H0 = {threshold}"),
        )
        .note("tau0", tau0)
        .note("alpha", alpha.value)
        .note("alpha_series", alpha.series.value())
        .note("alpha H0", threshold)
        .equality("M isometric to B_H0 and tau = alpha H0");
    Ok(r.finish((geo.h0 * tau0).powi(2), false))
}

/// First Robin eigenvalue of the ball `B_H0`: `(H0 x*)^2` with
/// `x* J_{n/2}(x*) / J_{n/2-1}(x*) = tau / H0`.
pub fn robin_ball_eigenvalue(n: u32, h0: f64, tau: f64) -> Result<BoundReport> {
    let geo = GeometrySpec::new(n, h0);
    geo.validate(true)?;
    if !(tau > 0.0) || !tau.is_finite() {
        return Err(Error::InvalidInput(format!("tau = {tau} must be positive")));
    }
    let root = char_root(n, tau / h0)?;
    let j = first_zero(f64::from(n) / 2.0 - 1.0)?;
    let mut r = BoundReport::new("robin-ball");
    r.assume(RICCI, RICCI_DETAIL)
        .check(
            "x* in (0, j_(n/2-1,1))",
            root.root > 0.0 && root.root < j,
            format!("x* = {}, j = {j}", root.root),
        )
        .note("x*", root.root)
        .note("c", tau / h0)
        .note("j_(n/2-1,1)", j)
        .equality("M isometric to B_H0");
    Ok(r.finish((h0 * root.root).powi(2), false))
}

fn friedrich_term(n: f64, min_s: f64) -> f64 {
    n * min_s / (4.0 * (n - 1.0))
}

/// Dirac: `lambda^2 > n minS / (4(n-1)) + n H0^2 tau0^2 / (2(n-1))`.
pub fn dirac_bound(geo: &GeometrySpec, cur: &CurvatureInputs) -> Result<BoundReport> {
    geo.validate(true)?;
    let n = geo.nf();
    let t0 = tau0(geo.n)?;
    let value = friedrich_term(n, cur.min_scalar) + n * (geo.h0 * t0).powi(2) / (2.0 * (n - 1.0));
    let mut r = BoundReport::new("dirac");
    r.assume(RICCI, RICCI_DETAIL)
        .assume("spin", "M is spin with a fixed spin structure")
        .assume("boundary condition", "chiral (CHI) or MIT bag condition on the boundary")
        .note("tau0", t0)
        .note("friedrich_term", friedrich_term(n, cur.min_scalar))
        .equality("none: the inequality is strict");
    Ok(r.finish(value, true))
}

/// MIT bag: `|lambda|^2 >= n minS / (4(n-1)) + n H0 Im(lambda)`.
pub fn mit_bound(geo: &GeometrySpec, cur: &CurvatureInputs) -> Result<BoundReport> {
    geo.validate(true)?;
    if !(cur.im_lambda >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "Im lambda = {} must be nonnegative",
            cur.im_lambda
        )));
    }
    let n = geo.nf();
    let value = friedrich_term(n, cur.min_scalar) + n * geo.h0 * cur.im_lambda;
    let mut r = BoundReport::new("mit");
    r.assume("spin", "M is spin with a fixed spin structure")
        .assume("boundary condition", "MIT bag condition")
        .note("friedrich_term", friedrich_term(n, cur.min_scalar))
        .equality(
            "M carries an imaginary Killing spinor and the boundary is totally umbilical \
             with constant mean curvature",
        );
    Ok(r.finish(value, false))
}

fn need_dim3(geo: &GeometrySpec) -> Result<()> {
    if geo.n < 3 {
        return Err(Error::Dimension(format!(
            "this bound needs n >= 3, got n = {}",
            geo.n
        )));
    }
    Ok(())
}

/// Yamabe: `mu_1 >= minS + 4(n-1)/(n-2) tau1^2 H0^2`.
pub fn yamabe_bound(geo: &GeometrySpec, cur: &CurvatureInputs) -> Result<BoundReport> {
    geo.validate(true)?;
    need_dim3(geo)?;
    let n = geo.nf();
    let t1 = tau1(geo.n)?;
    let value = cur.min_scalar + 4.0 * (n - 1.0) / (n - 2.0) * (t1 * geo.h0).powi(2);
    let mut r = BoundReport::new("yamabe");
    r.assume(RICCI, RICCI_DETAIL)
        .note("tau1", t1)
        .equality("round ball in R^n");
    Ok(r.finish(value, false))
}

/// Dirac via the conformal bound:
/// `|lambda|^2 > n minS / (4(n-1)) + n tau1^2 H0^2 / (n-2)`.
pub fn dirac_conformal_bound(geo: &GeometrySpec, cur: &CurvatureInputs) -> Result<BoundReport> {
    geo.validate(true)?;
    need_dim3(geo)?;
    let n = geo.nf();
    let t1 = tau1(geo.n)?;
    let value = friedrich_term(n, cur.min_scalar) + n * (t1 * geo.h0).powi(2) / (n - 2.0);
    let plain = dirac_bound(geo, cur)?;
    let plain_value = plain.value.unwrap_or(f64::NAN);
    let mut r = BoundReport::new("dirac-conformal");
    r.assume(RICCI, RICCI_DETAIL)
        .assume("spin", "M is spin with a fixed spin structure")
        .assume("boundary condition", "chiral (CHI) or MIT bag condition on the boundary")
        .note("tau1", t1)
        .note("friedrich_term", friedrich_term(n, cur.min_scalar))
        .note("dirac_bound", plain_value)
        .equality("none: the inequality is strict");
    if !(value > plain_value) {
        r.warnings.push(format!(
            "conformal bound {value} does not dominate the direct bound {plain_value}"
        ));
    }
    Ok(r.finish(value, true))
}

/// Robin on p-forms: `lambda_{1,p}(tau) > sigma_p^2 tau0^2 / (2 p^2)` for
/// `tau >= sigma_p (alpha/(2p) - 1)`.
pub fn pform_bound(geo: &GeometrySpec, cur: &CurvatureInputs, tau0: f64) -> Result<BoundReport> {
    geo.validate(false)?;
    cur.check_degree(geo.n)?;
    if !(cur.sigma_p > 0.0) {
        return Err(Error::InvalidInput(format!(
            "p-curvature floor sigma_p = {} must be positive",
            cur.sigma_p
        )));
    }
    let alpha = alpha_constant(geo.n, tau0)?;
    let p = f64::from(cur.p);
    let threshold = cur.sigma_p * (alpha.value / (2.0 * p) - 1.0);
    let value = (cur.sigma_p * tau0).powi(2) / (2.0 * p * p);
    let mut r = BoundReport::new("pform");
    r.assume(RICCI, RICCI_DETAIL)
        .assume(
            "curvature term",
            "Bochner curvature term W^[p] of M is nonnegative",
        )
        .check("tau > 0", cur.tau > 0.0, format!("tau = {}", cur.tau))
        .check(
            "tau >= sigma_p (alpha/(2p) - 1)",
            cur.tau >= threshold,
            format!("tau = {}, threshold = {threshold}", cur.tau),
        )
        .note("tau0", tau0)
        .note("alpha", alpha.value)
        .note("threshold", threshold)
        .equality("none: the inequality is strict");
    r.warnings.push(
        "the threshold omits the non-constructive epsilon of the original statement; \
         it is a sufficient condition"
            .into(),
    );
    Ok(r.finish(value, true))
}

/// `lambda_{1,p}(tau) > lambda_1(tau, B_{sigma_p/p}) / 2`.
pub fn pform_ball_comparison(geo: &GeometrySpec, cur: &CurvatureInputs) -> Result<BoundReport> {
    geo.validate(false)?;
    cur.check_degree(geo.n)?;
    if !(cur.sigma_p > 0.0) {
        return Err(Error::InvalidInput(format!(
            "p-curvature floor sigma_p = {} must be positive",
            cur.sigma_p
        )));
    }
    let h = cur.sigma_p / f64::from(cur.p);
    let ball = robin_ball_eigenvalue(geo.n, h, cur.tau)?;
    let ball_value = ball.value.ok_or_else(|| {
        Error::HypothesisViolated(ball.explanation.clone().unwrap_or_default())
    })?;
    let mut r = BoundReport::new("pform-ball");
    r.assume(RICCI, RICCI_DETAIL)
        .assume(
            "curvature term",
            "Bochner curvature term W^[p] of M is nonnegative",
        )
        .check("tau > 0", cur.tau > 0.0, format!("tau = {}", cur.tau))
        .note("H0", h)
        .note("ball_eigenvalue", ball_value)
        .note("x*", ball.intermediates["x*"])
        .equality("none: the inequality is strict");
    Ok(r.finish(ball_value / 2.0, true))
}

/// `lambda_{1,p}(tau) - lambda_{1,p-1}(tau) >= inf(W^[p] - T^[p]) / p`.
pub fn gap_bound(cur: &CurvatureInputs) -> Result<BoundReport> {
    if cur.p < 1 {
        return Err(Error::InvalidInput("form degree p must be >= 1".into()));
    }
    let value = cur.inf_w_minus_t / f64::from(cur.p);
    let mut r = BoundReport::new("gap");
    r.check(
        "sigma_p >= 0",
        cur.sigma_p >= 0.0,
        format!("sigma_p = {} (p-convex boundary)", cur.sigma_p),
    )
    .note("inf_w_minus_t", cur.inf_w_minus_t)
    .equality("");
    let mut r = r.finish(value, false);
    if cur.inf_w_minus_t == 0.0 && r.value.is_some() {
        // zero is the meaningful monotonicity statement, not a vacuous bound
        r.informative = true;
        r.warnings.clear();
        r.warnings
            .push("Euclidean p-convex: lambda_{1,p} >= lambda_{1,p-1}".into());
    }
    Ok(r)
}

/// Gallot-Meyer type bound for a curvature operator bounded below by
/// `gamma > 0`, with `c = max(p+1, n-p+1)`.
pub fn gallot_meyer_bound(geo: &GeometrySpec, cur: &CurvatureInputs) -> Result<BoundReport> {
    geo.validate(false)?;
    cur.check_degree(geo.n)?;
    if !(cur.gamma > 0.0) {
        return Err(Error::InvalidInput(format!(
            "curvature-operator floor gamma = {} must be positive",
            cur.gamma
        )));
    }
    let (n, p) = (geo.n, cur.p);
    let c = f64::from((p + 1).max(n - p + 1));
    let pnp = f64::from(p) * f64::from(n - p);
    let threshold = -c / (c - 1.0) * cur.sigma_p;
    let mut r = BoundReport::new("gallot-meyer");
    r.assume(
        "curvature operator >= gamma",
        "curvature operator of M bounded below by gamma",
    )
    .note("c", c)
    .note("threshold", threshold)
    .equality("");
    if cur.tau >= threshold {
        r.note("branch", 1.0).check(
            "tau >= -c/(c-1) sigma_p",
            true,
            format!("tau = {}, threshold = {threshold}", cur.tau),
        );
        return Ok(r.finish(pnp * c / (c - 1.0) * cur.gamma, false));
    }
    let denom = (c - 1.0) / c * cur.nu_1p - cur.sigma_p;
    if denom <= 0.0 {
        return Err(Error::DenominatorNonpositive(denom));
    }
    r.note("branch", 2.0)
        .note("denominator", denom)
        .note("nu_1p", cur.nu_1p)
        .check(
            "tau < -c/(c-1) sigma_p",
            true,
            format!("tau = {}, threshold = {threshold}", cur.tau),
        );
    if cur.sigma_p >= 0.0 {
        r.warnings.push(format!(
            "branch 2 forces sigma_p < 0, got sigma_p = {}",
            cur.sigma_p
        ));
    }
    Ok(r.finish(pnp * (cur.nu_1p + cur.tau) / denom * cur.gamma, false))
}

/// Zero mean-curvature floor: `int_bd f >= sqrt(l) cot(sqrt(l) R) int_M f`
/// for `sqrt(l) R < pi/2`.
pub fn cotangent_bound(geo: &GeometrySpec, lambda: f64) -> Result<BoundReport> {
    geo.validate(false)?;
    let radius = geo
        .radius
        .ok_or_else(|| Error::InvalidInput("the inner radius R is required".into()))?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::InvalidInput(format!("lambda = {lambda} must be positive")));
    }
    let s = lambda.sqrt();
    let arg = s * radius;
    if arg >= std::f64::consts::FRAC_PI_2 {
        return Err(Error::HypothesisViolated(format!(
            "sqrt(lambda) R = {arg} must be below pi/2"
        )));
    }
    let mut r = BoundReport::new("cotangent");
    r.assume(RICCI, RICCI_DETAIL)
        .check(
            "H >= 0",
            geo.h0 >= 0.0,
            format!("mean-curvature floor H0 = {}", geo.h0),
        )
        .note("sqrt(lambda) R", arg);
    Ok(r.finish(s / arg.tan(), false))
}

/// The chain `H0^2 t^2 > n^2 H0^2 / 4 > n H0 tau - tau^2 > (n-1) H0 tau - tau^2`
/// at `tau = alpha(t) H0`, where `t = (n/2-1) - a_1 (n/2-1)^(1/3) / 2^(1/3)` is
/// the Airy lower bound for `j_{n/2-1,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AiryChain {
    pub tau0: f64,
    pub alpha: f64,
    pub tau: f64,
    pub terms: [f64; 4],
    pub holds: bool,
}

pub fn airy_chain(n: u32, h0: f64) -> Result<AiryChain> {
    let geo = GeometrySpec::new(n, h0);
    geo.validate(true)?;
    need_dim3(&geo)?;
    let nf = f64::from(n);
    let t = airy_floor(nf / 2.0 - 1.0);
    let alpha = alpha_constant(n, t)?.value;
    let tau = alpha * h0;
    let terms = [
        (h0 * t).powi(2),
        nf * nf * h0 * h0 / 4.0,
        nf * h0 * tau - tau * tau,
        (nf - 1.0) * h0 * tau - tau * tau,
    ];
    let holds = terms.windows(2).all(|w| w[0] > w[1]);
    Ok(AiryChain {
        tau0: t,
        alpha,
        tau,
        terms,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_hypothesis_drops_value() {
        let mut r = BoundReport::new("t");
        r.check("x", false, "no");
        let r = r.finish(1.0, false);
        assert!(r.value.is_none());
        assert!(r.explanation.unwrap().contains("x (no)"));
    }

    #[test]
    fn rejects_curved_comparison() {
        let g = GeometrySpec::new(3, 1.0).with_k(1.0);
        assert!(matches!(
            isoperimetric_bound(&g),
            Err(Error::HypothesisViolated(_))
        ));
    }
}
