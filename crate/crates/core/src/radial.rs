//! Finite-volume eigensolver for the radial Laplacian on a ball,
//! `-u'' - (n-1)/r u' = lambda u` on `(0, R)`, with Dirichlet, Neumann or
//! Robin (`-u'(R) = tau u(R)`) conditions at `r = R`.
//!
//! Nodes sit at `r_i = i h`. Node `i` owns the control volume
//! `[r_i - h/2, r_i + h/2]` clipped to `[0, R]`, so the flux through `r = 0`
//! vanishes, which is the regularity condition `u'(0) = 0`. The stiffness and
//! mass matrices are symmetric in the `r^(n-1)` inner product, and the
//! generalized problem `K u = lambda W u` is reduced to the symmetric
//! tridiagonal `W^(-1/2) K W^(-1/2)`.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};

pub const MIN_GRID_POINTS: usize = 64;

const BISECTION_STEPS: usize = 200;
const INVERSE_ITERATIONS: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Bc {
    Dirichlet,
    Neumann,
    Robin { tau: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialProblem {
    pub n: u32,
    pub radius: f64,
    pub bc: Bc,
    /// Number of cells `N`; the base grid has spacing `R/N`.
    pub grid_points: usize,
}

impl RadialProblem {
    pub fn new(n: u32, radius: f64, bc: Bc, grid_points: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Dimension(format!("n = {n} must be >= 2")));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::DegenerateGrid(format!("radius {radius} must be positive")));
        }
        if grid_points < MIN_GRID_POINTS {
            return Err(Error::DegenerateGrid(format!(
                "{grid_points} grid points, need at least {MIN_GRID_POINTS}"
            )));
        }
        if let Bc::Robin { tau } = bc {
            if !(tau > 0.0 && tau.is_finite()) {
                return Err(Error::InvalidInput(format!("Robin parameter {tau} must be positive")));
            }
        }
        Ok(Self {
            n,
            radius,
            bc,
            grid_points,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialSpectrum {
    /// Lowest discrete eigenvalue on the base grid.
    pub lambda_1: f64,
    /// Same on the grid with half the spacing.
    pub lambda_1_fine: f64,
    /// `(4 lambda_fine - lambda_1) / 3`.
    pub lambda_1_extrapolated: f64,
    /// Observed order from the base, half and quarter spacing grids; NaN when
    /// the discrete eigenvalues coincide (Neumann constants).
    pub order_estimate: f64,
    pub grid: Vec<f64>,
    /// Positive eigenvector on `grid`, scaled to maximum 1.
    pub eigenvector: Vec<f64>,
    /// Control-volume weights `int r^(n-1)` on `grid`.
    pub weights: Vec<f64>,
}

/// Assembled generalized eigenproblem on one grid.
struct Discrete {
    grid: Vec<f64>,
    weights: Vec<f64>,
    /// Flux coefficients `r_{i+1/2}^(n-1) / h` between nodes `i` and `i+1`.
    flux: Vec<f64>,
    /// Extra diagonal term at the last node (Robin).
    boundary: f64,
}

impl Discrete {
    fn assemble(prob: &RadialProblem, cells: usize) -> Self {
        let n = prob.n as i32;
        let r_big = prob.radius;
        let h = r_big / cells as f64;
        let nodes = match prob.bc {
            Bc::Dirichlet => cells,
            _ => cells + 1,
        };
        let grid: Vec<f64> = (0..nodes).map(|i| i as f64 * h).collect();
        let weights = grid
            .iter()
            .map(|&r| {
                let a = (r - 0.5 * h).max(0.0);
                let b = (r + 0.5 * h).min(r_big);
                (b.powi(n) - a.powi(n)) / f64::from(prob.n)
            })
            .collect();
        // for Dirichlet the last flux couples to the removed node u_N = 0
        let flux = (0..cells)
            .map(|i| ((i as f64 + 0.5) * h).powi(n - 1) / h)
            .collect();
        let boundary = match prob.bc {
            Bc::Robin { tau } => tau * r_big.powi(n - 1),
            _ => 0.0,
        };
        Self {
            grid,
            weights,
            flux,
            boundary,
        }
    }

    fn len(&self) -> usize {
        self.grid.len()
    }

    fn stiffness_diag(&self, i: usize) -> f64 {
        let m = self.len();
        let left = if i > 0 { self.flux[i - 1] } else { 0.0 };
        let right = self.flux.get(i).copied().unwrap_or(0.0);
        let extra = if i + 1 == m && m > self.flux.len() {
            self.boundary
        } else {
            0.0
        };
        left + right + extra
    }

    /// Diagonal and off-diagonal of `W^(-1/2) K W^(-1/2)`.
    fn symmetric(&self) -> (Vec<f64>, Vec<f64>) {
        let m = self.len();
        let d = (0..m)
            .map(|i| self.stiffness_diag(i) / self.weights[i])
            .collect();
        let e = (0..m - 1)
            .map(|i| -self.flux[i] / (self.weights[i] * self.weights[i + 1]).sqrt())
            .collect();
        (d, e)
    }

    /// `u^T K u / u^T W u`, with `u^T K u` assembled from differences.
    fn rayleigh(&self, u: &[f64]) -> f64 {
        let m = self.len();
        let mut energy = 0.0;
        for (i, c) in self.flux.iter().enumerate() {
            let next = if i + 1 < m { u[i + 1] } else { 0.0 };
            energy += c * (next - u[i]).powi(2);
        }
        if m > self.flux.len() {
            energy += self.boundary * u[m - 1] * u[m - 1];
        }
        let mass: f64 = u.iter().zip(&self.weights).map(|(x, w)| w * x * x).sum();
        energy / mass
    }
}

/// Number of eigenvalues of the tridiagonal `(d, e)` strictly below `x`.
fn sturm_count(d: &[f64], e: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = d[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        if q == 0.0 {
            q = f64::EPSILON * (d[i - 1].abs() + e[i - 1].abs()).max(f64::MIN_POSITIVE);
        }
        q = d[i] - x - e[i - 1] * e[i - 1] / q;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Solves `(T - sigma) x = b` for tridiagonal `T` by the Thomas algorithm.
/// `sigma` lies below the spectrum, so the matrix is positive definite.
fn solve_shifted(d: &[f64], e: &[f64], sigma: f64, b: &[f64]) -> Vec<f64> {
    let m = d.len();
    let mut c = vec![0.0; m];
    let mut x = vec![0.0; m];
    let mut piv = d[0] - sigma;
    x[0] = b[0] / piv;
    for i in 1..m {
        c[i - 1] = e[i - 1] / piv;
        piv = d[i] - sigma - e[i - 1] * c[i - 1];
        x[i] = (b[i] - e[i - 1] * x[i - 1]) / piv;
    }
    for i in (0..m - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    x
}

/// Lowest eigenpair of one grid: `(lambda, u)` with `u > 0`, `max u = 1`.
fn lowest(disc: &Discrete) -> Result<(f64, Vec<f64>)> {
    let (d, e) = disc.symmetric();
    let m = d.len();
    // Gershgorin bound; the stiffness matrix is positive semidefinite
    let upper = (0..m)
        .map(|i| {
            let l = if i > 0 { e[i - 1].abs() } else { 0.0 };
            let r = if i + 1 < m { e[i].abs() } else { 0.0 };
            d[i] + l + r
        })
        .fold(0.0_f64, f64::max);
    let mut lo = -f64::EPSILON * upper - f64::MIN_POSITIVE;
    let mut hi = upper;
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sturm_count(&d, &e, mid) >= 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    if sturm_count(&d, &e, lo) != 0 {
        return Err(Error::ConvergenceFailure(
            "Sturm bisection lost its bracket".into(),
        ));
    }
    // shift strictly below the first eigenvalue
    let sigma = lo - 4.0 * f64::EPSILON * upper;
    let mut x: Vec<f64> = disc.weights.iter().map(|w| w.sqrt()).collect();
    let mut converged = false;
    for _ in 0..INVERSE_ITERATIONS {
        let mut y = solve_shifted(&d, &e, sigma, &x);
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(Error::ConvergenceFailure("inverse iteration broke down".into()));
        }
        y.iter_mut().for_each(|v| *v /= norm);
        let change = y
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        x = y;
        if change < 1.0e-14 {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::ConvergenceFailure(format!(
            "inverse iteration did not settle in {INVERSE_ITERATIONS} steps"
        )));
    }
    let mut u: Vec<f64> = x
        .iter()
        .zip(&disc.weights)
        .map(|(v, w)| v / w.sqrt())
        .collect();
    let peak = u.iter().copied().fold(0.0_f64, |m, v| if v.abs() > m.abs() { v } else { m });
    u.iter_mut().for_each(|v| *v /= peak);
    Ok((disc.rayleigh(&u), u))
}

/// Lowest eigenvalue on grids with `N`, `2N` and `4N` cells, Richardson
/// extrapolated from the first two.
pub fn solve_lowest(prob: &RadialProblem) -> Result<RadialSpectrum> {
    let base = Discrete::assemble(prob, prob.grid_points);
    let (l1, u) = lowest(&base)?;
    let (l2, _) = lowest(&Discrete::assemble(prob, 2 * prob.grid_points))?;
    let (l4, _) = lowest(&Discrete::assemble(prob, 4 * prob.grid_points))?;
    let (d12, d24) = (l1 - l2, l2 - l4);
    let order_estimate = if d12 != 0.0 && d24 != 0.0 {
        (d12 / d24).abs().log2()
    } else {
        f64::NAN
    };
    Ok(RadialSpectrum {
        lambda_1: l1,
        lambda_1_fine: l2,
        lambda_1_extrapolated: (4.0 * l2 - l1) / 3.0,
        order_estimate,
        grid: base.grid,
        eigenvector: u,
        weights: base.weights,
    })
}

/// Extrapolated `lambda_1` of the Robin ball for each `tau`.
pub fn robin_sweep(n: u32, radius: f64, taus: &[f64], grid_points: usize) -> Result<Vec<(f64, f64)>> {
    if taus.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidInput("Robin parameters must be strictly ascending".into()));
    }
    taus.iter()
        .map(|&tau| {
            let prob = RadialProblem::new(n, radius, Bc::Robin { tau }, grid_points)?;
            Ok((tau, solve_lowest(&prob)?.lambda_1_extrapolated))
        })
        .collect()
}

/// Writes `r,u` rows.
pub fn write_eigenvector_csv(spec: &RadialSpectrum, mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "r,u")?;
    for (r, u) in spec.grid.iter().zip(&spec.eigenvector) {
        writeln!(w, "{r:.17e},{u:.17e}")?;
    }
    Ok(())
}

/// Writes `tau,lambda_1` rows.
pub fn write_sweep_csv(rows: &[(f64, f64)], mut w: impl Write) -> std::io::Result<()> {
    writeln!(w, "tau,lambda_1")?;
    for (t, l) in rows {
        writeln!(w, "{t:.17e},{l:.17e}")?;
    }
    Ok(())
}
