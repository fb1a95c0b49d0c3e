//! Browser demo: Bessel curves, the Robin ball sweep and the comparison
//! ODE, returned as flat `f64` arrays for plotting.
//!
//! The plain functions are usable (and tested) natively; the
//! `wasm-bindgen` exports in [`bindings`] wrap them for JavaScript.

use bessel_bounds::ode::{self, OdeProblem, ZeroCase};
use bessel_bounds::radial;
use bessel_bounds::special::{bessel_j, bessel_y};
use bessel_bounds::{bounds, Error, Result};

/// Largest number of samples any operation will produce.
pub const MAX_SAMPLES: usize = 2000;

fn check_samples(samples: usize) -> Result<()> {
    if (2..=MAX_SAMPLES).contains(&samples) {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "samples = {samples} must lie in [2, {MAX_SAMPLES}]"
        )))
    }
}

/// Rows `(x, J_nu(x), Y_nu(x))` for `x` evenly spaced on `(0, x_max]`,
/// flattened. `Y` values below `-clip` are replaced by `-clip`.
pub fn bessel_curve(nu: f64, x_max: f64, samples: usize, clip: f64) -> Result<Vec<f64>> {
    check_samples(samples)?;
    if !(x_max > 0.0 && x_max.is_finite()) {
        return Err(Error::InvalidInput(format!("x_max = {x_max} must be positive")));
    }
    let mut out = Vec::with_capacity(3 * samples);
    for i in 1..=samples {
        let x = x_max * i as f64 / samples as f64;
        let y = bessel_y(nu, x)?;
        out.extend([x, bessel_j(nu, x)?, y.max(-clip)]);
    }
    Ok(out)
}

/// Rows `(tau, closed form, finite-volume oracle)` of the first Robin
/// eigenvalue of the ball of radius `1/h0`, for `count` values of tau
/// spaced logarithmically on `[tau_min, tau_max]`.
pub fn robin_sweep(
    n: u32,
    h0: f64,
    tau_min: f64,
    tau_max: f64,
    count: usize,
    grid: usize,
) -> Result<Vec<f64>> {
    check_samples(count)?;
    if !(tau_min > 0.0 && tau_max > tau_min && tau_max.is_finite()) {
        return Err(Error::InvalidInput(format!(
            "need 0 < tau_min < tau_max, got {tau_min}, {tau_max}"
        )));
    }
    let ratio = (tau_max / tau_min).ln();
    let taus: Vec<f64> = (0..count)
        .map(|i| tau_min * (ratio * i as f64 / (count - 1) as f64).exp())
        .collect();
    let oracle = radial::robin_sweep(n, 1.0 / h0, &taus, grid)?;
    let mut out = Vec::with_capacity(3 * count);
    for (tau, lambda) in oracle {
        let closed = bounds::robin_ball_eigenvalue(n, h0, tau)?
            .value
            .ok_or_else(|| Error::InvalidInput(format!("no closed form at tau = {tau}")))?;
        out.extend([tau, closed, lambda]);
    }
    Ok(out)
}

/// A sampled trajectory of the comparison ODE.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    /// Rows `(r, y numeric, y closed form)`, flattened.
    pub rows: Vec<f64>,
    pub a: f64,
    pub b: f64,
    /// First zero, NaN when `y` keeps its sign.
    pub r0: f64,
    pub max_residual: f64,
}

/// Integrates the comparison ODE from `(y0, yp0)`, or from the data the
/// ball of radius `1/h0` generates when `ball` is set.
pub fn ode_trajectory(n: u32, h0: f64, lambda: f64, y0: f64, yp0: f64, ball: bool) -> Result<Trajectory> {
    let (y0, yp0) = if ball {
        ode::ball_initial_data(n, h0, lambda)?
    } else {
        (y0, yp0)
    };
    let sol = ode::integrate_ivp(&OdeProblem::new(n, h0, lambda, y0, yp0)?)?;
    let r0 = match ode::first_zero(&sol)? {
        ZeroCase::Interior { r0, .. } | ZeroCase::Boundary { r0, .. } => r0,
        ZeroCase::Absent => f64::NAN,
    };
    let rows = sol
        .grid
        .iter()
        .zip(&sol.values)
        .zip(&sol.closed_form)
        .flat_map(|((r, y), c)| [*r, *y, *c])
        .collect();
    Ok(Trajectory {
        rows,
        a: sol.a,
        b: sol.b,
        r0,
        max_residual: sol.max_residual,
    })
}

#[cfg(target_arch = "wasm32")]
pub mod bindings {
    use wasm_bindgen::prelude::*;

    fn js(e: bessel_bounds::Error) -> JsError {
        JsError::new(&e.to_string())
    }

    #[wasm_bindgen(js_name = besselCurve)]
    pub fn bessel_curve(nu: f64, x_max: f64, samples: usize, clip: f64) -> Result<Vec<f64>, JsError> {
        super::bessel_curve(nu, x_max, samples, clip).map_err(js)
    }

    #[wasm_bindgen(js_name = robinSweep)]
    pub fn robin_sweep(
        n: u32,
        h0: f64,
        tau_min: f64,
        tau_max: f64,
        count: usize,
        grid: usize,
    ) -> Result<Vec<f64>, JsError> {
        super::robin_sweep(n, h0, tau_min, tau_max, count, grid).map_err(js)
    }

    #[wasm_bindgen]
    pub struct Trajectory(super::Trajectory);

    #[wasm_bindgen]
    impl Trajectory {
        #[wasm_bindgen(getter)]
        pub fn rows(&self) -> Vec<f64> {
            self.0.rows.clone()
        }
        #[wasm_bindgen(getter)]
        pub fn a(&self) -> f64 {
            self.0.a
        }
        #[wasm_bindgen(getter)]
        pub fn b(&self) -> f64 {
            self.0.b
        }
        #[wasm_bindgen(getter)]
        pub fn r0(&self) -> f64 {
            self.0.r0
        }
        #[wasm_bindgen(getter, js_name = maxResidual)]
        pub fn max_residual(&self) -> f64 {
            self.0.max_residual
        }
    }

    #[wasm_bindgen(js_name = odeTrajectory)]
    pub fn ode_trajectory(
        n: u32,
        h0: f64,
        lambda: f64,
        y0: f64,
        yp0: f64,
        ball: bool,
    ) -> Result<Trajectory, JsError> {
        super::ode_trajectory(n, h0, lambda, y0, yp0, ball)
            .map(Trajectory)
            .map_err(js)
    }
}
