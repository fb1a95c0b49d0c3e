//! Bessel-function machinery and eigenvalue lower bounds for the Laplacian,
//! Dirac and Yamabe operators on manifolds with boundary, together with two
//! independent numerical oracles on Euclidean balls.
//!
//! * [`special`]: `J_nu`, `Y_nu`, derivatives, cross-product identities.
//! * [`zeros`]: zeros `j_{nu,k}` and the characteristic roots
//!   `x J_{n/2}(x) / J_{n/2-1}(x) = c`.
//! * [`bounds`]: closed-form eigenvalue bounds with hypothesis bookkeeping.
//! * [`ode`]: the radial comparison equation, integrated and in closed form.
//! * [`radial`]: finite-volume eigensolver for balls.

// `!(x > 0.0)` is used on purpose: it also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod error;
pub mod ode;
pub mod radial;
pub mod special;
pub mod zeros;

pub use error::{Error, Result};
pub use special::{BesselOrder, BesselValue};
