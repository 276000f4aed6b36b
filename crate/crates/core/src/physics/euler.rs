//! Compressible Euler equations with a stiffened-gas equation of state.
//!
//! Conserved state `(rho, rho v1, rho v2, rho E)` with
//! `p = (gamma - 1) rho e - gamma pi` and `E = e + |v|^2 / 2`.

use super::{rotate_vector, Frame, Model};
use crate::error::{AdmissibilityError, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParams {
    pub gamma: f64,
    /// Pressure stiffness in Pa.
    pub pi: f64,
}

/// Primitive variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Primitive {
    pub rho: f64,
    pub v: [f64; 2],
    pub p: f64,
}

impl FluidParams {
    pub fn new(gamma: f64, pi: f64) -> Result<Self> {
        if !(gamma > 1.0) || !(pi >= 0.0) || !gamma.is_finite() || !pi.is_finite() {
            return Err(Error::Config(format!(
                "fluid parameters need gamma > 1 and pi >= 0 (got gamma={gamma}, pi={pi})"
            )));
        }
        Ok(FluidParams { gamma, pi })
    }

    /// Pressure of a conserved state; requires positive density.
    #[inline]
    pub fn pressure(&self, u: &[f64]) -> Result<f64, AdmissibilityError> {
        if !u[..4].iter().all(|v| v.is_finite()) {
            return Err(AdmissibilityError::NonFinite);
        }
        if !(u[0] > 0.0) {
            return Err(AdmissibilityError::Density(u[0]));
        }
        Ok((self.gamma - 1.0) * (u[3] - 0.5 * (u[1] * u[1] + u[2] * u[2]) / u[0]) - self.gamma * self.pi)
    }

    /// Conserved to primitive; requires positive density (pressure unchecked).
    pub fn primitive(&self, u: &[f64]) -> Result<Primitive, AdmissibilityError> {
        let p = self.pressure(u)?;
        Ok(Primitive {
            rho: u[0],
            v: [u[1] / u[0], u[2] / u[0]],
            p,
        })
    }

    pub fn conserved(&self, rho: f64, v: [f64; 2], p: f64) -> [f64; 4] {
        let rho_e = (p + self.gamma * self.pi) / (self.gamma - 1.0);
        [
            rho,
            rho * v[0],
            rho * v[1],
            rho_e + 0.5 * rho * (v[0] * v[0] + v[1] * v[1]),
        ]
    }

    /// Specific internal energy `e = (p + gamma pi) / ((gamma - 1) rho)`.
    pub fn internal_energy(&self, rho: f64, p: f64) -> f64 {
        (p + self.gamma * self.pi) / ((self.gamma - 1.0) * rho)
    }

    /// Sound speed `sqrt(gamma (p + pi) / rho)`.
    #[inline]
    pub fn sound_speed(&self, rho: f64, p: f64) -> f64 {
        (self.gamma * (p + self.pi) / rho).max(0.0).sqrt()
    }

    /// Admissible primitive variables: `rho > 0` and `p >= -pi`.
    #[inline]
    pub fn admissible_primitive(&self, u: &[f64]) -> Result<Primitive, AdmissibilityError> {
        let w = self.primitive(u)?;
        if !(w.p >= -self.pi) {
            return Err(AdmissibilityError::Pressure {
                pressure: w.p,
                min: -self.pi,
            });
        }
        Ok(w)
    }
}

impl Model for FluidParams {
    const NVARS: usize = 4;
    const NAMES: &'static [&'static str] = &["rho", "rho_v1", "rho_v2", "rho_E"];
    const MIRROR_STATE: &'static [usize] = &[1];
    const MIRROR_FLUX: &'static [usize] = &[0, 2, 3];

    #[inline]
    fn flux(&self, u: &[f64], dir: usize, out: &mut [f64]) -> Result<(), AdmissibilityError> {
        let w = self.admissible_primitive(u)?;
        let vd = w.v[dir];
        out[0] = u[0] * vd;
        out[1] = u[1] * vd;
        out[2] = u[2] * vd;
        out[1 + dir] += w.p;
        out[3] = vd * (u[3] + w.p);
        Ok(())
    }

    fn wave_speed(&self, u: &[f64], n: [f64; 2]) -> Result<f64, AdmissibilityError> {
        let w = self.admissible_primitive(u)?;
        Ok((w.v[0] * n[0] + w.v[1] * n[1]).abs() + self.sound_speed(w.rho, w.p))
    }

    fn max_wave_speed(&self, u: &[f64]) -> Result<f64, AdmissibilityError> {
        let w = self.admissible_primitive(u)?;
        Ok(w.v[0].hypot(w.v[1]) + self.sound_speed(w.rho, w.p))
    }

    fn rotate(&self, u: &[f64], n: [f64; 2], frame: Frame, out: &mut [f64]) {
        let m = rotate_vector([u[1], u[2]], n, frame);
        out[0] = u[0];
        out[1] = m[0];
        out[2] = m[1];
        out[3] = u[3];
    }

    fn admissible(&self, u: &[f64]) -> Result<(), AdmissibilityError> {
        self.admissible_primitive(u).map(|_| ())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn air() -> FluidParams {
        FluidParams::new(1.4, 0.0).unwrap()
    }

    #[test]
    fn pressure_only_fluxes() {
        let f = air();
        let u = [1.0, 0.0, 0.0, 2.5];
        let mut out = [0.0; 4];
        let close = |a: [f64; 4], b: [f64; 4]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-15);
        f.flux(&u, 0, &mut out).unwrap();
        assert!(close(out, [0.0, 1.0, 0.0, 0.0]));
        f.flux(&u, 1, &mut out).unwrap();
        assert!(close(out, [0.0, 0.0, 1.0, 0.0]));
    }

    #[test]
    fn moving_state_flux() {
        let f = air();
        let u = f.conserved(1.0, [2.0, 0.0], 1.0);
        assert!((u[3] - 4.5).abs() < 1e-15);
        let mut out = [0.0; 4];
        f.flux(&u, 0, &mut out).unwrap();
        // independent evaluation from primitives
        let (rho, v, p, re) = (1.0, 2.0, 1.0, 4.5);
        let expect = [rho * v, rho * v * v + p, 0.0, v * (re + p)];
        for k in 0..4 {
            assert!((out[k] - expect[k]).abs() < 1e-14);
        }
        assert_eq!(expect, [2.0, 5.0, 0.0, 11.0]);
    }

    #[test]
    fn primitive_round_trip() {
        let f = air();
        assert!((f.conserved(1.0, [0.0, 0.0], 1.0)[3] - 2.5).abs() < 1e-15);
        let w = FluidParams::new(4.4, 6e8).unwrap();
        let u = w.conserved(1000.0, [0.0, 0.0], 1e5);
        let e = (1e5 + 4.4 * 6e8) / (3.4 * 1000.0);
        assert!((u[3] / 1000.0 - e).abs() < 1e-12 * e);
        assert!((w.internal_energy(1000.0, 1e5) - e).abs() < 1e-12 * e);
        let back = w.primitive(&u).unwrap();
        assert!((back.p - 1e5).abs() < 1e-13 * 4.4 * 6e8);
        let moving = f.conserved(0.7, [1.3, -0.4], 2.2);
        let pm = f.primitive(&moving).unwrap();
        assert!((pm.v[0] - 1.3).abs() < 1e-14 && (pm.v[1] + 0.4).abs() < 1e-14);
        assert!((pm.p - 2.2).abs() < 1e-13);
        assert!(matches!(f.primitive(&[0.0, 0.0, 0.0, 1.0]), Err(AdmissibilityError::Density(_))));
    }

    #[test]
    fn pressure_bound_is_closed() {
        // gamma - 1 = 0.5 and pi = 2 keep the arithmetic exact: p = rho E / 2 - 3
        let w = FluidParams::new(1.5, 2.0).unwrap();
        let u = [1.0, 0.0, 0.0, 2.0];
        assert_eq!(w.pressure(&u).unwrap(), -2.0);
        assert!(w.admissible(&u).is_ok());
        let bad = [1.0, 0.0, 0.0, 1.99];
        assert!(matches!(w.admissible(&bad), Err(AdmissibilityError::Pressure { .. })));
    }

    #[test]
    fn wave_speeds() {
        let f = air();
        let u = f.conserved(1.0, [0.0, 0.0], 1.0);
        assert!((f.max_wave_speed(&u).unwrap() - 1.4f64.sqrt()).abs() < 1e-15);
        // v = (3, 4), c = 2: rho = gamma p / c^2
        let u = f.conserved(1.4 / 4.0, [3.0, 4.0], 1.0);
        assert!((f.wave_speed(&u, [0.0, 1.0]).unwrap() - 6.0).abs() < 1e-14);
        assert!((f.max_wave_speed(&u).unwrap() - 7.0).abs() < 1e-14);
    }

    #[test]
    fn rotation_example() {
        let f = air();
        let mut r = [0.0; 4];
        f.rotate(&[1.0, 2.0, 3.0, 9.0], [0.0, 1.0], Frame::Into, &mut r);
        assert_eq!(r, [1.0, 3.0, -2.0, 9.0]);
        f.rotate(&[1.0, 2.0, 3.0, 9.0], [1.0, 0.0], Frame::Into, &mut r);
        assert_eq!(r, [1.0, 2.0, 3.0, 9.0]);
    }
}
