//! Pointwise numerical flux formulas.
//!
//! Every formula takes traces as `(state, normal flux)` pairs. For the
//! relaxation-limit scheme the normal flux trace is the projected physical
//! flux `F^n[U_h]`; for the relaxation scheme it is the normal relaxation
//! variable `V^n_h`.

use super::{BoundaryPolicy, InterfaceShear};
use crate::coupling::fsi_rs::{riemann_solve_rotated, RsResult};
use crate::coupling::FsiParams;
use crate::error::AdmissibilityError;
use crate::physics::{mirror, ElasticParams, Frame, Model, MAX_VARS};

/// Lax–Friedrichs type flux `1/2 s (u^- - u^+) + 1/2 (f^- + f^+)`.
#[inline]
pub fn llf(um: &[f64], up: &[f64], fm: &[f64], fp: &[f64], s: f64, out: &mut [f64]) {
    for k in 0..out.len() {
        out[k] = 0.5 * s * (um[k] - up[k]) + 0.5 * (fm[k] + fp[k]);
    }
}

/// Upwind flux of the relaxation system with scalar speed `lambda`.
///
/// `out` holds `(g^U, g^{V^1}, g^{V^2})`, each of length `m = um.len()`;
/// `wm`, `wp` are the traces of `V^n = n1 V^1 + n2 V^2`.
#[inline]
pub fn relaxed_flux(um: &[f64], up: &[f64], wm: &[f64], wp: &[f64], n: [f64; 2], lambda: f64, out: &mut [f64]) {
    let m = um.len();
    let l2 = lambda * lambda;
    for k in 0..m {
        out[k] = 0.5 * lambda * (um[k] - up[k]) + 0.5 * (wm[k] + wp[k]);
        let g = 0.5 * lambda * (wm[k] - wp[k]) + 0.5 * l2 * (um[k] + up[k]);
        out[m + k] = n[0] * g;
        out[2 * m + k] = n[1] * g;
    }
}

/// Ghost trace for an outer boundary point: copy or mirror.
#[inline]
pub fn boundary_ghost<M: Model>(
    model: &M,
    policy: BoundaryPolicy,
    u: &[f64],
    w: &[f64],
    n: [f64; 2],
    ug: &mut [f64],
    wg: &mut [f64],
) {
    let m = M::NVARS;
    match policy {
        BoundaryPolicy::Outflow => {
            ug[..m].copy_from_slice(&u[..m]);
            wg[..m].copy_from_slice(&w[..m]);
        }
        BoundaryPolicy::Reflective => mirror(model, &u[..m], &w[..m], n, ug, wg),
        BoundaryPolicy::Absorbing => unreachable!("absorbing boundaries need a reference state"),
    }
}

/// Godunov flux of the elastic system at a boundary point whose outgoing
/// characteristics come from `u` and incoming ones from `uref`.
#[inline]
pub fn elastic_absorbing_flux(params: &ElasticParams, u: &[f64], uref: &[f64], n: [f64; 2], out: &mut [f64]) {
    let (mut s, mut r, mut star, mut f) = ([0.0; 5], [0.0; 5], [0.0; 5], [0.0; 5]);
    params.rotate(&u[..5], n, Frame::Into, &mut s);
    params.rotate(&uref[..5], n, Frame::Into, &mut r);
    let z1 = params.rho * params.c1;
    let z2 = params.rho * params.c2;
    // outgoing amplitude a (speed +c), incoming b (speed -c) per wave family
    let (a1, b1) = (0.5 * (s[0] - s[2] / z1), 0.5 * (r[0] + r[2] / z1));
    let (a2, b2) = (0.5 * (s[1] - s[3] / z2), 0.5 * (r[1] + r[3] / z2));
    star[0] = a1 + b1;
    star[2] = z1 * (b1 - a1);
    star[1] = a2 + b2;
    star[3] = z2 * (b2 - a2);
    star[4] = s[4];
    params.apply(&star, 0, &mut f);
    params.rotate(&f, n, Frame::OutOf, &mut out[..5]);
}

/// Interface fluxes for solid trace `um` (normal flux `fm`) and fluid trace
/// `up` (normal flux or normal relaxation trace `wp`); `n` points into the fluid.
///
/// `out_solid` is the flux through the solid cell face (outward `n`),
/// `out_fluid` the flux through the fluid cell face (outward `-n`). With
/// `relaxed` the fluid flux also carries the `V^1, V^2` components
/// (length 12), otherwise only the four conserved components.
#[allow(clippy::too_many_arguments)]
#[inline]
pub fn interface_fluxes(
    params: &FsiParams,
    um: &[f64],
    fm: &[f64],
    up: &[f64],
    wp: &[f64],
    n: [f64; 2],
    lambda: [f64; 2],
    relaxed: bool,
    shear: InterfaceShear,
    out_solid: &mut [f64],
    out_fluid: &mut [f64],
) -> Result<RsResult, AdmissibilityError> {
    let [lambda1, lambda2] = lambda;
    let mut rs = riemann_solve_rotated(um, up, wp, lambda2, n, params)?;
    if shear == InterfaceShear::TractionFree {
        let s = &params.solid;
        let mut r = [0.0; 5];
        s.rotate(&rs.u_r, n, Frame::Into, &mut r);
        // U_R - Sigma2 r_2-, r_2- = (0, 1, 0, rho c2, 0)
        r[1] -= r[3] / (s.rho * s.c2);
        r[3] = 0.0;
        s.rotate(&r, n, Frame::OutOf, &mut rs.u_r);
    }
    let mut fr = [0.0; MAX_VARS];
    params.solid.apply_normal(&rs.u_r, n, &mut fr);
    for k in 0..5 {
        out_solid[k] = 0.5 * lambda1 * (um[k] - rs.u_r[k]) + 0.5 * (fm[k] + fr[k]);
    }
    for k in 0..4 {
        out_fluid[k] = 0.5 * lambda2 * (up[k] - rs.u_l[k]) - 0.5 * (wp[k] + rs.v_l[k]);
    }
    if relaxed {
        let l2 = lambda2 * lambda2;
        for k in 0..4 {
            let g = 0.5 * lambda2 * (wp[k] - rs.v_l[k]) - 0.5 * l2 * (up[k] + rs.u_l[k]);
            out_fluid[4 + k] = n[0] * g;
            out_fluid[8 + k] = n[1] * g;
        }
    }
    Ok(rs)
}
