//! Interface coupling between the elastic solid and the fluid.
//!
//! All formulas are evaluated in the frame of the interface normal `n`
//! (pointing from the solid into the fluid) where the normal direction is
//! the first coordinate; the public entry points rotate in and out.

pub mod fsi_rs;
pub mod guard;
pub mod oracle;
pub mod psi;
pub mod sampling;
pub mod sweep;

pub use fsi_rs::{riemann_solve, riemann_solve_canonical, RsResult};
pub use guard::{admissibility_guard, GuardReport};
pub use oracle::{oracle_solve, CouplingSystem, FsiSystem, NewtonOptions, NewtonReport};
pub use psi::{psi_q, psi_u};

use crate::physics::{ElasticParams, FluidParams};

/// Material data of the coupled pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsiParams {
    pub solid: ElasticParams,
    pub fluid: FluidParams,
}
