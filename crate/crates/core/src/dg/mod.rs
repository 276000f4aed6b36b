//! Discontinuous Galerkin discretization on the two Cartesian subdomains.

pub mod field;
pub mod flux;
pub mod limiter;
pub mod operator;

pub use field::{Block, DgField};
pub use limiter::{Chain, Limiter, NoLimiter, PositivityLimiter, TvbLimiter};
pub use operator::{BlockKind, Operator, OperatorOptions, RhsReport, Workspace};

/// Dissipation speed of the interior Lax–Friedrichs flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpeedMode {
    /// Largest wave speed of the two traces at each quadrature point.
    #[default]
    Local,
    /// The subdomain-wide speed of the current step.
    Global,
}

/// Treatment of the outer boundary of a subdomain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundaryPolicy {
    /// Ghost state equal to the interior trace.
    #[default]
    Outflow,
    /// Mirrored ghost state (slip wall for the fluid, free-slip wall for the solid).
    Reflective,
    /// Incoming characteristics taken from a fixed reference state (the
    /// initial boundary trace), outgoing ones from the interior trace. For the
    /// fluid the reference state is used as the ghost of the LLF flux.
    Absorbing,
}

/// Shear part of the solid coupling state used in the interface flux.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InterfaceShear {
    /// Tangential velocity and shear stress copied from the solid trace, as
    /// returned by the Riemann solver.
    Copy,
    /// Additionally moved along the left-going shear wave to `sigma_nt = 0`.
    #[default]
    TractionFree,
}
