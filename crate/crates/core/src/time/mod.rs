//! Time stepping: tableaux, CFL control and Runge–Kutta drivers.

pub mod cfl;
pub mod rk;
pub mod tableau;

pub use cfl::compute_dt;
pub use rk::{explicit_rk, imex_rk, DgStepper, StageVector, StepReport};
pub use tableau::{ImexPair, Tableau};
