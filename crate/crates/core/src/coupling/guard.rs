//! Sufficient conditions for an admissible fluid coupling state.
//!
//! With `Z = rho_s c1`, `D = rho^+ (lambda - v1^+) + Z` and consistent
//! auxiliary data `V^+ = F^1(U^+)`, the coupling pressure satisfies
//!
//! ```text
//! D (p_L + pi) = Z (p^+ + pi) + rho^+ (lambda - v1^+) (pi - s11^- - Z (v1^+ - w1^-))
//! ```
//!
//! so `p_L >= -pi` iff the right-hand side is non-negative. That exact
//! condition is reported as `pressure_exact`; the three textbook bounds are
//! reported verbatim alongside it.

use super::FsiParams;
use crate::physics::{check_unit, Frame, Model};
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GuardReport {
    /// `v1^+ + c^+ > w1^-`.
    pub velocity: bool,
    /// `s11^- > -(p^+ + c^+^2 rho^+)`.
    pub stress: bool,
    /// `(p^+ - pi)(Z + c^+ rho^+) >= (lambda - v1^+) c^+ (s11^- + p^+ + v1^+ - w1^-)`, in its explicit form.
    pub pressure_literal: bool,
    /// Exact non-negativity of `D (p_L + pi)` (see module docs).
    pub pressure_exact: bool,
    /// `lambda >= |v1^+| + c^+`.
    pub subcharacteristic: bool,
    /// `U^+` itself is admissible.
    pub fluid_admissible: bool,
}

impl GuardReport {
    /// All conditions that together guarantee `rho_L > 0` and `p_L >= -pi`.
    pub fn all_hold(&self) -> bool {
        self.fluid_admissible && self.velocity && self.stress && self.pressure_exact && self.subcharacteristic
    }

    /// The literal set of bounds (three explicit inequalities plus the subcharacteristic condition).
    pub fn literal_hold(&self) -> bool {
        self.fluid_admissible && self.velocity && self.stress && self.pressure_literal && self.subcharacteristic
    }
}

/// Evaluates the admissibility bounds in the frame of `n`.
pub fn admissibility_guard(um: &[f64], up: &[f64], lambda: f64, n: [f64; 2], params: &FsiParams) -> Result<GuardReport> {
    check_unit(n)?;
    let (mut s, mut f) = ([0.0; 5], [0.0; 4]);
    params.solid.rotate(um, n, Frame::Into, &mut s);
    params.fluid.rotate(up, n, Frame::Into, &mut f);
    Ok(guard_canonical(&s, &f, lambda, params))
}

pub(crate) fn guard_canonical(s: &[f64], f: &[f64], lambda: f64, params: &FsiParams) -> GuardReport {
    let fl = &params.fluid;
    let prim = match fl.admissible_primitive(f) {
        Ok(w) => w,
        Err(_) => return GuardReport::default(),
    };
    let (rho, v1, p, pi) = (prim.rho, prim.v[0], prim.p, fl.pi);
    let c = fl.sound_speed(rho, p);
    let z = params.solid.impedance();
    let (w1, s11) = (s[0], s[2]);
    let exact = z * (p + pi) + rho * (lambda - v1) * (pi - s11 - z * (v1 - w1));
    GuardReport {
        velocity: v1 + c > w1,
        stress: s11 > -(p + c * c * rho),
        pressure_literal: (p - pi) * (z + c * rho) >= (lambda - v1) * c * (s11 + p + v1 - w1),
        pressure_exact: exact >= 0.0,
        subcharacteristic: lambda >= v1.abs() + c,
        fluid_admissible: true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::fsi_rs::riemann_solve_canonical;
    use crate::physics::{ElasticParams, FluidParams};

    fn params() -> FsiParams {
        FsiParams {
            solid: ElasticParams::new(1.0, 2.0, 1.0).unwrap(),
            fluid: FluidParams::new(1.4, 0.0).unwrap(),
        }
    }

    #[test]
    fn equilibrium_satisfies_every_bound() {
        let g = admissibility_guard(&[0.0, 0.0, -1.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 2.5], 2.0, [1.0, 0.0], &params()).unwrap();
        assert!(g.all_hold() && g.literal_hold());
    }

    #[test]
    fn stress_bound_is_strict() {
        // c^2 rho = 1.4, p = 1
        let g = admissibility_guard(&[0.0, 0.0, -2.4, 0.0, 0.0], &[1.0, 0.0, 0.0, 2.5], 2.0, [1.0, 0.0], &params()).unwrap();
        assert!(!g.stress);
        assert!(!g.all_hold());
    }

    #[test]
    fn slow_relaxation_speed_fails() {
        let g = admissibility_guard(&[0.0, 0.0, -1.0, 0.0, 0.0], &[1.0, 0.0, 0.0, 2.5], 0.5, [1.0, 0.0], &params()).unwrap();
        assert!(!g.subcharacteristic);
    }

    #[test]
    fn exact_pressure_condition_matches_solver() {
        let pr = params();
        let up = [1.0, 0.1, 0.0, 2.5 + 0.005];
        let mut vp = [0.0; 4];
        pr.fluid.flux(&up, 0, &mut vp).unwrap();
        let lam = 2.0;
        // scan the solid stress across the point where p_L = -pi
        for i in 0..200 {
            let s11 = -1.0 + 0.05 * i as f64;
            let um = [0.0, 0.0, s11, 0.0, 0.0];
            let g = guard_canonical(&um, &up, lam, &pr);
            let r = riemann_solve_canonical(&um, &up, &vp, lam, &pr);
            if g.all_hold() {
                assert!(r.is_ok(), "s11 = {s11}");
            }
            if g.velocity && g.stress && g.subcharacteristic && !g.pressure_exact {
                assert!(r.is_err(), "s11 = {s11}");
            }
        }
    }
}
