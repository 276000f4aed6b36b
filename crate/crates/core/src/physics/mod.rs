//! Physical models: linear elasticity and stiffened-gas Euler.

pub mod elastic;
pub mod euler;

pub use elastic::ElasticParams;
pub use euler::{FluidParams, Primitive};

use crate::error::{AdmissibilityError, Error, Result};

/// Largest state size handled by the solver (relaxed fluid: `U, V^1, V^2`).
pub const MAX_VARS: usize = 12;

/// Direction of a frame rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Global components to `(n, t)` components.
    Into,
    /// `(n, t)` components back to global ones.
    OutOf,
}

/// Tangent `t = (-n2, n1)` completing `n` to a right-handed frame.
pub fn tangent(n: [f64; 2]) -> [f64; 2] {
    [-n[1], n[0]]
}

/// Rejects normals that are not unit vectors (to `1e-12`).
pub fn check_unit(n: [f64; 2]) -> Result<()> {
    let len = (n[0] * n[0] + n[1] * n[1]).sqrt();
    if !len.is_finite() || (len - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!("normal {n:?} is not a unit vector")));
    }
    Ok(())
}

/// Rotates a 2-vector into (`Into`) or out of (`OutOf`) the frame of `n`.
#[inline]
pub fn rotate_vector(v: [f64; 2], n: [f64; 2], frame: Frame) -> [f64; 2] {
    let t = tangent(n);
    match frame {
        Frame::Into => [n[0] * v[0] + n[1] * v[1], t[0] * v[0] + t[1] * v[1]],
        Frame::OutOf => [n[0] * v[0] + t[0] * v[1], n[1] * v[0] + t[1] * v[1]],
    }
}

/// Common interface of the two coupled systems.
pub trait Model: Sync + Send {
    /// Number of state variables.
    const NVARS: usize;
    /// Variable names used in output headers.
    const NAMES: &'static [&'static str];

    /// Physical flux in direction `dir` (0 for x1, 1 for x2).
    fn flux(&self, u: &[f64], dir: usize, out: &mut [f64]) -> Result<(), AdmissibilityError>;

    /// Normal flux `n1 F^1 + n2 F^2`.
    fn normal_flux(&self, u: &[f64], n: [f64; 2], out: &mut [f64]) -> Result<(), AdmissibilityError> {
        let mut f2 = [0.0; MAX_VARS];
        self.flux(u, 0, out)?;
        self.flux(u, 1, &mut f2)?;
        for k in 0..Self::NVARS {
            out[k] = n[0] * out[k] + n[1] * f2[k];
        }
        Ok(())
    }

    /// Largest wave speed along `n`.
    fn wave_speed(&self, u: &[f64], n: [f64; 2]) -> Result<f64, AdmissibilityError>;

    /// Largest wave speed over all directions (spectral bound of the Jacobians).
    fn max_wave_speed(&self, u: &[f64]) -> Result<f64, AdmissibilityError>;

    /// Rotates a state (or a flux-like vector of the same layout) into or out of the frame of `n`.
    fn rotate(&self, u: &[f64], n: [f64; 2], frame: Frame, out: &mut [f64]);

    /// Components negated when mirroring a state across a reflective wall (in the normal frame).
    const MIRROR_STATE: &'static [usize];
    /// Components of the normal flux negated by the same mirroring (in the normal frame).
    const MIRROR_FLUX: &'static [usize];

    /// Checks that `u` is an admissible state.
    fn admissible(&self, u: &[f64]) -> Result<(), AdmissibilityError>;
}

/// Verifies the subcharacteristic condition `lambda >= speed(u)` for every state.
pub fn subcharacteristic_holds<M: Model>(model: &M, lambda: f64, states: &[&[f64]]) -> Result<bool> {
    for u in states {
        if model.max_wave_speed(u)? > lambda {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Mirrors a trace state and its normal flux across a reflective wall with normal `n`.
pub fn mirror<M: Model>(model: &M, u: &[f64], fnorm: &[f64], n: [f64; 2], u_out: &mut [f64], f_out: &mut [f64]) {
    let nv = M::NVARS;
    let mut tmp = [0.0; MAX_VARS];
    model.rotate(u, n, Frame::Into, &mut tmp);
    for &k in M::MIRROR_STATE {
        tmp[k] = -tmp[k];
    }
    model.rotate(&tmp[..nv], n, Frame::OutOf, u_out);
    model.rotate(fnorm, n, Frame::Into, &mut tmp);
    for &k in M::MIRROR_FLUX {
        tmp[k] = -tmp[k];
    }
    model.rotate(&tmp[..nv], n, Frame::OutOf, f_out);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_rotation_round_trip() {
        let n = [0.6, 0.8];
        let v = [1.5, -2.0];
        let r = rotate_vector(v, n, Frame::Into);
        let back = rotate_vector(r, n, Frame::OutOf);
        assert!((back[0] - v[0]).abs() < 1e-15 && (back[1] - v[1]).abs() < 1e-15);
        assert_eq!(rotate_vector([3.0, 4.0], [0.0, 1.0], Frame::Into), [4.0, -3.0]);
        assert!(check_unit([0.6, 0.8]).is_ok());
        assert!(matches!(check_unit([1.0, 1.0]), Err(Error::Domain(_))));
    }

    #[test]
    fn reflective_mirror_of_fluid_flips_normal_velocity() {
        let f = FluidParams::new(1.4, 0.0).unwrap();
        let n = [0.0, 1.0];
        let u = f.conserved(1.2, [0.3, 1.0], 0.9);
        let mut fl = [0.0; 4];
        f.normal_flux(&u, n, &mut fl).unwrap();
        let (mut ug, mut fg) = ([0.0; 4], [0.0; 4]);
        mirror(&f, &u, &fl, n, &mut ug, &mut fg);
        let pg = f.primitive(&ug).unwrap();
        assert!((pg.v[1] + 1.0).abs() < 1e-14);
        assert!((pg.v[0] - 0.3).abs() < 1e-14);
        assert!((pg.p - 0.9).abs() < 1e-14 && (pg.rho - 1.2).abs() < 1e-14);
        // the mirrored flux is the physical flux of the mirrored state
        let mut fe = [0.0; 4];
        f.normal_flux(&ug, n, &mut fe).unwrap();
        for k in 0..4 {
            assert!((fe[k] - fg[k]).abs() < 1e-13);
        }
    }

    #[test]
    fn reflective_mirror_of_solid_is_consistent() {
        let s = ElasticParams::new(1.0, 2.0, 1.0).unwrap();
        let n = [-0.6, 0.8];
        let u = [0.4, -0.2, 1.0, 0.3, -0.5];
        let mut fl = [0.0; 5];
        s.normal_flux(&u, n, &mut fl).unwrap();
        let (mut ug, mut fg) = ([0.0; 5], [0.0; 5]);
        mirror(&s, &u, &fl, n, &mut ug, &mut fg);
        let mut fe = [0.0; 5];
        s.normal_flux(&ug, n, &mut fe).unwrap();
        for k in 0..5 {
            assert!((fe[k] - fg[k]).abs() < 1e-14);
        }
        let wn = |w: &[f64]| w[0] * n[0] + w[1] * n[1];
        assert!((wn(&ug) + wn(&u)).abs() < 1e-14);
        // normal stress copied
        let snn = |s: &[f64]| n[0] * n[0] * s[2] + 2.0 * n[0] * n[1] * s[3] + n[1] * n[1] * s[4];
        assert!((snn(&ug) - snn(&u)).abs() < 1e-14);
    }
}
