//! Two-dimensional linear elasticity in velocity–stress form.
//!
//! State `(w1, w2, s11, s12, s22)`: deformation velocity and the symmetric
//! stress tensor. The system is linear, `F^j(U) = A^j U`.

use super::{rotate_vector, Frame, Model};
use crate::error::{AdmissibilityError, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticParams {
    /// Density in kg/m^3.
    pub rho: f64,
    /// Dilatation wave speed in m/s.
    pub c1: f64,
    /// Shear wave speed in m/s.
    pub c2: f64,
}

impl ElasticParams {
    pub fn new(rho: f64, c1: f64, c2: f64) -> Result<Self> {
        let ok = rho.is_finite() && c1.is_finite() && c2.is_finite();
        if !ok || rho <= 0.0 || c2 <= 0.0 || c1 <= c2 {
            return Err(Error::Config(format!(
                "elastic parameters need rho > 0 and c1 > c2 > 0 (got rho={rho}, c1={c1}, c2={c2})"
            )));
        }
        Ok(ElasticParams { rho, c1, c2 })
    }

    /// From Lamé constants with `c1^2 = 2 (mu + lambda) / rho` and `c2^2 = mu / rho`.
    pub fn from_lame(rho: f64, mu: f64, lambda: f64) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::Config(format!("density must be positive, got {rho}")));
        }
        Self::new(rho, (2.0 * (mu + lambda) / rho).sqrt(), (mu / rho).sqrt())
    }

    /// Lamé constants `(mu, lambda)` inverting [`ElasticParams::from_lame`].
    pub fn lame(&self) -> (f64, f64) {
        let mu = self.rho * self.c2 * self.c2;
        (mu, 0.5 * self.rho * self.c1 * self.c1 - mu)
    }

    pub fn alpha(&self) -> f64 {
        1.0 - 2.0 * (self.c2 / self.c1).powi(2)
    }

    pub fn beta(&self) -> f64 {
        self.c1 * self.c1 - self.c2 * self.c2
    }

    /// Acoustic impedance `rho c1`.
    pub fn impedance(&self) -> f64 {
        self.rho * self.c1
    }

    /// Matrix `A^j` (row-major).
    pub fn matrix(&self, dir: usize) -> [[f64; 5]; 5] {
        let (r, c1s, c2s, a) = (self.rho, self.c1 * self.c1, self.c2 * self.c2, self.alpha());
        let mut m = [[0.0; 5]; 5];
        if dir == 0 {
            m[0][2] = -1.0 / r;
            m[1][3] = -1.0 / r;
            m[2][0] = -r * c1s;
            m[3][1] = -r * c2s;
            m[4][0] = -a * r * c1s;
        } else {
            m[0][3] = -1.0 / r;
            m[1][4] = -1.0 / r;
            m[2][1] = -a * r * c1s;
            m[3][0] = -r * c2s;
            m[4][1] = -r * c1s;
        }
        m
    }

    #[inline]
    pub fn apply(&self, u: &[f64], dir: usize, out: &mut [f64]) {
        let (r, c1s, c2s, a) = (self.rho, self.c1 * self.c1, self.c2 * self.c2, self.alpha());
        if dir == 0 {
            out[0] = -u[2] / r;
            out[1] = -u[3] / r;
            out[2] = -r * c1s * u[0];
            out[3] = -r * c2s * u[1];
            out[4] = -a * r * c1s * u[0];
        } else {
            out[0] = -u[3] / r;
            out[1] = -u[4] / r;
            out[2] = -a * r * c1s * u[1];
            out[3] = -r * c2s * u[0];
            out[4] = -r * c1s * u[1];
        }
    }

    /// `A^n U = n1 A^1 U + n2 A^2 U`.
    #[inline]
    pub fn apply_normal(&self, u: &[f64], n: [f64; 2], out: &mut [f64]) {
        let mut a = [0.0; 5];
        let mut b = [0.0; 5];
        self.apply(u, 0, &mut a);
        self.apply(u, 1, &mut b);
        for k in 0..5 {
            out[k] = n[0] * a[k] + n[1] * b[k];
        }
    }
}

impl Model for ElasticParams {
    const NVARS: usize = 5;
    const NAMES: &'static [&'static str] = &["w1", "w2", "sigma11", "sigma12", "sigma22"];
    const MIRROR_STATE: &'static [usize] = &[0, 3];
    const MIRROR_FLUX: &'static [usize] = &[1, 2, 4];

    fn flux(&self, u: &[f64], dir: usize, out: &mut [f64]) -> Result<(), AdmissibilityError> {
        self.apply(u, dir, out);
        Ok(())
    }

    fn normal_flux(&self, u: &[f64], n: [f64; 2], out: &mut [f64]) -> Result<(), AdmissibilityError> {
        self.apply_normal(u, n, out);
        Ok(())
    }

    fn wave_speed(&self, _u: &[f64], _n: [f64; 2]) -> Result<f64, AdmissibilityError> {
        Ok(self.c1)
    }

    fn max_wave_speed(&self, _u: &[f64]) -> Result<f64, AdmissibilityError> {
        Ok(self.c1)
    }

    fn rotate(&self, u: &[f64], n: [f64; 2], frame: Frame, out: &mut [f64]) {
        let w = rotate_vector([u[0], u[1]], n, frame);
        // sigma' = R sigma R^T where R has the rows of the target frame
        let (r0, r1) = match frame {
            Frame::Into => ([n[0], n[1]], [-n[1], n[0]]),
            Frame::OutOf => ([n[0], -n[1]], [n[1], n[0]]),
        };
        let s = [[u[2], u[3]], [u[3], u[4]]];
        let quad = |a: [f64; 2], b: [f64; 2]| {
            a[0] * (s[0][0] * b[0] + s[0][1] * b[1]) + a[1] * (s[1][0] * b[0] + s[1][1] * b[1])
        };
        out[0] = w[0];
        out[1] = w[1];
        out[2] = quad(r0, r0);
        out[3] = quad(r0, r1);
        out[4] = quad(r1, r1);
    }

    fn admissible(&self, u: &[f64]) -> Result<(), AdmissibilityError> {
        if u[..5].iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(AdmissibilityError::NonFinite)
        }
    }
}
