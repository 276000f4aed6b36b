//! Closed-form Riemann solver for the elastic solid coupled to the relaxed fluid.
//!
//! In the normal frame, with `Z = rho_s c1`, `K = V^rho - lambda rho^+`:
//!
//! ```text
//! rho_L   = K (K - Z) / (V^m1 - lambda m1^+ - lambda K + s11^- + (lambda - w1^-) Z)
//! m1_L    = K + lambda rho_L
//! m2_L    = (lambda m2^+ - V^m2) / (lambda - v1_L)
//! p_L     = (w1^- - v1_L) Z - s11^-
//! V_L     = V^+ + lambda (U_L - U^+)
//! ```
//!
//! For `V^+ = F^1(U^+)` this reduces to the classical expressions, e.g.
//! `rho_L = rho (lambda - v1)(rho (lambda - v1) + Z) / ((lambda - v1)^2 rho + (lambda - w1) Z + s11 + p)`.
//! The solid state moves along the left-going dilatation wave only:
//! `U_R = U^- - Sigma1 r_{1-}` with `Sigma1 = w1^- - v1_L`.

use super::FsiParams;
use crate::error::{AdmissibilityError, Result};
use crate::physics::{check_unit, Frame, Model};

/// Coupling data at one interface point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsResult {
    /// Solid coupling state.
    pub u_r: [f64; 5],
    /// Fluid coupling state.
    pub u_l: [f64; 4],
    /// Fluid auxiliary (normal flux) coupling datum.
    pub v_l: [f64; 4],
    /// Strength of the left-going dilatation wave in the solid.
    pub sigma1: f64,
}

/// Riemann solver in the normal frame (`n = e1`).
pub fn riemann_solve_canonical(
    um: &[f64],
    up: &[f64],
    vp: &[f64],
    lambda: f64,
    params: &FsiParams,
) -> Result<RsResult, AdmissibilityError> {
    let fl = &params.fluid;
    if !um[..5].iter().chain(&up[..4]).chain(&vp[..4]).all(|v| v.is_finite()) || !lambda.is_finite() {
        return Err(AdmissibilityError::NonFinite);
    }
    if !(up[0] > 0.0) {
        return Err(AdmissibilityError::Density(up[0]));
    }
    let z = params.solid.impedance();
    let (w1, s11) = (um[0], um[2]);
    let k = vp[0] - lambda * up[0];
    let den = vp[1] - lambda * up[1] - lambda * k + s11 + (lambda - w1) * z;
    if !(den > 0.0) {
        return Err(AdmissibilityError::Denominator(den));
    }
    let rho_l = k * (k - z) / den;
    if !(rho_l > 0.0) || !rho_l.is_finite() {
        return Err(AdmissibilityError::Density(rho_l));
    }
    let m1 = k + lambda * rho_l;
    let v1 = m1 / rho_l;
    let tan_den = lambda - v1;
    if !(tan_den > 0.0) {
        return Err(AdmissibilityError::Denominator(tan_den));
    }
    let m2 = (lambda * up[2] - vp[2]) / tan_den;
    let sigma1 = w1 - v1;
    let p_l = sigma1 * z - s11;
    if !(p_l >= -fl.pi) {
        return Err(AdmissibilityError::Pressure {
            pressure: p_l,
            min: -fl.pi,
        });
    }
    let e_l = (p_l + fl.gamma * fl.pi) / (fl.gamma - 1.0) + 0.5 * (m1 * m1 + m2 * m2) / rho_l;
    let u_l = [rho_l, m1, m2, e_l];
    let mut v_l = [0.0; 4];
    for i in 0..4 {
        v_l[i] = vp[i] + lambda * (u_l[i] - up[i]);
    }
    let alpha = params.solid.alpha();
    let u_r = [
        v1,
        um[1],
        s11 - sigma1 * z,
        um[3],
        um[4] - sigma1 * alpha * z,
    ];
    Ok(RsResult {
        u_r,
        u_l,
        v_l,
        sigma1,
    })
}

/// Riemann solver for traces `(U^-, U^+, V^+)` given in global components,
/// where `V^+` is the fluid auxiliary variable projected on `n`.
pub fn riemann_solve(
    um: &[f64],
    up: &[f64],
    vp: &[f64],
    lambda: f64,
    n: [f64; 2],
    params: &FsiParams,
) -> Result<RsResult> {
    check_unit(n)?;
    Ok(riemann_solve_rotated(um, up, vp, lambda, n, params)?)
}

/// As [`riemann_solve`] without the unit-normal check (mesh normals are exact).
#[inline]
pub(crate) fn riemann_solve_rotated(
    um: &[f64],
    up: &[f64],
    vp: &[f64],
    lambda: f64,
    n: [f64; 2],
    params: &FsiParams,
) -> Result<RsResult, AdmissibilityError> {
    let (mut s, mut f, mut v) = ([0.0; 5], [0.0; 4], [0.0; 4]);
    params.solid.rotate(um, n, Frame::Into, &mut s);
    params.fluid.rotate(up, n, Frame::Into, &mut f);
    params.fluid.rotate(vp, n, Frame::Into, &mut v);
    let r = riemann_solve_canonical(&s, &f, &v, lambda, params)?;
    let mut out = r;
    params.solid.rotate(&r.u_r, n, Frame::OutOf, &mut out.u_r);
    params.fluid.rotate(&r.u_l, n, Frame::OutOf, &mut out.u_l);
    params.fluid.rotate(&r.v_l, n, Frame::OutOf, &mut out.v_l);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::psi::psi_q_canonical;
    use crate::physics::{ElasticParams, FluidParams};

    fn params() -> FsiParams {
        FsiParams {
            solid: ElasticParams::new(1.0, 2.0, 1.0).unwrap(),
            fluid: FluidParams::new(1.4, 0.0).unwrap(),
        }
    }

    #[test]
    fn equilibrium_is_a_fixed_point() {
        let pr = params();
        let um = [0.0, 0.0, -1.0, 0.0, 0.0];
        let up = [1.0, 0.0, 0.0, 2.5];
        let vp = [0.0, 1.0, 0.0, 0.0];
        let r = riemann_solve_canonical(&um, &up, &vp, 2.0, &pr).unwrap();
        for k in 0..5 {
            assert!((r.u_r[k] - um[k]).abs() < 1e-15);
        }
        for k in 0..4 {
            assert!((r.u_l[k] - up[k]).abs() < 1e-15);
            assert!((r.v_l[k] - vp[k]).abs() < 1e-15);
        }
        assert_eq!(r.sigma1, 0.0);
    }

    #[test]
    fn tangential_data_pass_through() {
        let pr = params();
        let um = [0.0, 3.0, -1.0, 0.7, 0.0];
        let up = [1.0, 0.0, 0.0, 2.5];
        let vp = [0.0, 1.0, 0.0, 0.0];
        let r = riemann_solve_canonical(&um, &up, &vp, 2.0, &pr).unwrap();
        assert_eq!(r.u_r[1], 3.0);
        assert_eq!(r.u_r[3], 0.7);
    }

    #[test]
    fn solution_satisfies_relaxed_coupling_and_lax_relation() {
        let pr = params();
        let um = [0.1, 0.0, -1.2, 0.0, 0.0];
        let up = pr.fluid.conserved(1.0, [0.05, 0.0], 1.0);
        let mut vp = [0.0; 4];
        pr.fluid.flux(&up, 0, &mut vp).unwrap();
        let lam = 2.5;
        let r = riemann_solve_canonical(&um, &up, &vp, lam, &pr).unwrap();
        let res = psi_q_canonical(&r.u_r, &r.u_l, &r.v_l, &pr.fluid).unwrap();
        assert!(res.iter().all(|x| x.abs() < 1e-14), "{res:?}");
        for i in 0..4 {
            assert!((r.v_l[i] - vp[i] - lam * (r.u_l[i] - up[i])).abs() < 1e-14);
        }
        // U_R lies on the left-going dilatation wave
        let a = pr.solid.alpha();
        let r1m = [1.0, 0.0, 2.0, 0.0, 2.0 * a];
        for k in 0..5 {
            assert!((r.u_r[k] - (um[k] - r.sigma1 * r1m[k])).abs() < 1e-14);
        }
        // classical closed form for rho_L
        let (rho, v1, p) = (1.0, 0.05, 1.0);
        let z = 2.0;
        let expect = rho * (lam - v1) * (rho * (lam - v1) + z)
            / ((lam - v1).powi(2) * rho + (lam - um[0]) * z + um[2] + p);
        assert!((r.u_l[0] - expect).abs() < 1e-14);
        // pressure from the closed form equals sigma1 Z - s11
        let pl = pr.fluid.pressure(&r.u_l).unwrap();
        assert!((pl - (r.sigma1 * z - um[2])).abs() < 1e-13);
    }

    #[test]
    fn failures_carry_the_violated_bound() {
        let pr = params();
        // strongly tensile solid pulling the fluid into vacuum
        let um = [-5.0, 0.0, 5.0, 0.0, 0.0];
        let up = [1.0, 0.0, 0.0, 2.5];
        let vp = [0.0, 1.0, 0.0, 0.0];
        let err = riemann_solve_canonical(&um, &up, &vp, 2.0, &pr).unwrap_err();
        assert!(matches!(
            err,
            AdmissibilityError::Pressure { .. } | AdmissibilityError::Denominator(_) | AdmissibilityError::Density(_)
        ));
    }
}
