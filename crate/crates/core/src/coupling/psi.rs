//! Coupling functions: the physical condition and its relaxed extension.

use super::FsiParams;
use crate::error::{AdmissibilityError, Result};
use crate::physics::{check_unit, ElasticParams, Frame, FluidParams, Model};

/// Residual of the physical coupling condition at an interface point:
/// `(w.n - v.n, n.sigma.n + p)`.
pub fn psi_u(um: &[f64], up: &[f64], n: [f64; 2], fluid: &FluidParams) -> Result<[f64; 2]> {
    check_unit(n)?;
    let mut s = [0.0; 5];
    let mut f = [0.0; 4];
    // any elastic parameters rotate the same way
    ElasticParams { rho: 1.0, c1: 2.0, c2: 1.0 }.rotate(um, n, Frame::Into, &mut s);
    fluid.rotate(up, n, Frame::Into, &mut f);
    Ok(psi_u_canonical(&s, &f, fluid)?)
}

pub(crate) fn psi_u_canonical(s: &[f64], f: &[f64], fluid: &FluidParams) -> Result<[f64; 2], AdmissibilityError> {
    let p = fluid.pressure(f)?;
    Ok([s[0] - f[1] / f[0], s[2] + p])
}

/// Residual of the relaxed coupling condition, evaluated in the frame of `n`.
pub fn psi_q(um: &[f64], up: &[f64], vp: &[f64], n: [f64; 2], params: &FsiParams) -> Result<[f64; 5]> {
    check_unit(n)?;
    let mut s = [0.0; 5];
    let mut f = [0.0; 4];
    let mut v = [0.0; 4];
    params.solid.rotate(um, n, Frame::Into, &mut s);
    params.fluid.rotate(up, n, Frame::Into, &mut f);
    params.fluid.rotate(vp, n, Frame::Into, &mut v);
    Ok(psi_q_canonical(&s, &f, &v, &params.fluid)?)
}

pub(crate) fn psi_q_canonical(
    s: &[f64],
    f: &[f64],
    v: &[f64],
    fluid: &FluidParams,
) -> Result<[f64; 5], AdmissibilityError> {
    let rho = f[0];
    if !(rho > 0.0) {
        return Err(AdmissibilityError::Density(rho));
    }
    let p = fluid.pressure(f)?;
    Ok([
        s[0] - f[1] / rho,
        s[2] + p,
        v[0] / rho - s[0],
        f[1] * f[1] / rho - v[1] - s[2],
        v[2] - f[2] * s[0],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::physics::Model;

    fn params() -> FsiParams {
        FsiParams {
            solid: ElasticParams::new(1.0, 2.0, 1.0).unwrap(),
            fluid: FluidParams::new(1.4, 0.0).unwrap(),
        }
    }

    #[test]
    fn psi_u_examples() {
        let f = params().fluid;
        let up = [1.0, 0.0, 0.0, 2.5];
        let r = psi_u(&[0.0, 0.0, -1.0, 0.0, 0.0], &up, [1.0, 0.0], &f).unwrap();
        assert!(r[0] == 0.0 && r[1].abs() < 1e-15);
        let r = psi_u(&[1.0, 0.0, -1.0, 0.0, 0.0], &up, [1.0, 0.0], &f).unwrap();
        assert!(r[0] == 1.0 && r[1].abs() < 1e-15);
        assert!(psi_u(&[0.0; 5], &up, [1.0, 1.0], &f).is_err());
    }

    #[test]
    fn psi_u_of_initial_wall_state() {
        let f = params().fluid;
        let up = f.conserved(2e7 / (287.058 * 293.0), [0.0, 0.0], 2e7);
        let r = psi_u(&[0.0, 0.0, -2e7, 0.0, 0.0], &up, [1.0, 0.0], &f).unwrap();
        assert!(r[0] == 0.0 && r[1].abs() < 1e-8);
    }

    #[test]
    fn psi_q_vanishes_at_consistent_equilibrium() {
        let pr = params();
        let um = [0.0, 0.0, -1.0, 0.0, 0.0];
        let up = [1.0, 0.0, 0.0, 2.5];
        let mut vp = [0.0; 4];
        pr.fluid.normal_flux(&up, [1.0, 0.0], &mut vp).unwrap();
        assert!((vp[1] - 1.0).abs() < 1e-15);
        let r = psi_q(&um, &up, &vp, [1.0, 0.0], &pr).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-15));
        // consistency holds for moving states too, in any frame
        let n = [0.8, -0.6];
        let up = pr.fluid.conserved(1.3, [0.32, 0.24], 2.0);
        let vn = up[1] / up[0] * n[0] + up[2] / up[0] * n[1];
        let t = [0.6, 0.8];
        let w = [vn * n[0] + 0.2 * t[0], vn * n[1] + 0.2 * t[1]];
        // isotropic stress sigma = -p I
        let um = [w[0], w[1], -2.0, 0.0, -2.0];
        let mut vp = [0.0; 4];
        pr.fluid.normal_flux(&up, n, &mut vp).unwrap();
        let r = psi_q(&um, &up, &vp, n, &pr).unwrap();
        assert!(r.iter().all(|x| x.abs() < 1e-14), "{r:?}");
        let ru = psi_u(&um, &up, n, &pr.fluid).unwrap();
        assert!(ru.iter().all(|x| x.abs() < 1e-14));
    }

    #[test]
    fn psi_q_sensitivity_to_mass_flux() {
        let pr = params();
        let um = [0.0, 0.0, -1.0, 0.0, 0.0];
        let up = [1.7, 0.0, 0.0, 2.5];
        let vp = [0.0, 1.0, 0.0, 0.0];
        let base = psi_q(&um, &up, &vp, [1.0, 0.0], &pr).unwrap();
        let d = 1e-3;
        let moved = psi_q(&um, &up, &[d, 1.0, 0.0, 0.0], [1.0, 0.0], &pr).unwrap();
        for k in 0..5 {
            let expect = if k == 2 { d / 1.7 } else { 0.0 };
            assert!((moved[k] - base[k] - expect).abs() < 1e-15);
        }
    }
}
