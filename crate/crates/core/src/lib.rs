//! Discontinuous Galerkin solver for two hyperbolic systems coupled across a
//! fixed interface.
//!
//! The shipped instantiation couples two-dimensional linear elasticity
//! (subdomain 1) with the compressible Euler equations for a stiffened gas
//! (subdomain 2). Interface fluxes come from a closed-form Riemann solver for
//! a Jin–Xin relaxation of the fluid, used either in its relaxation limit
//! (explicit SSP Runge–Kutta) or at finite relaxation rate (IMEX Runge–Kutta).

// `!(x > 0.0)` is deliberate: NaN has to fail these checks
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod coupling;
pub mod dg;
pub mod driver;
pub mod error;
pub mod exec;
pub mod mesh;
pub mod physics;
pub mod time;

pub use error::{AdmissibilityError, Error, Result};
pub use exec::Execution;
