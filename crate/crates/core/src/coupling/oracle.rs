//! Generic construction of an interface Riemann solver by root finding.
//!
//! A coupling system supplies the relaxed coupling function evaluated on
//! states parameterized by their wave strengths (the Lax-curve
//! parameterization of each half-Riemann problem). The solver finds the
//! parameters that make the coupling residual vanish with a damped Newton
//! iteration and a finite-difference Jacobian. This is slow but needs no
//! problem-specific algebra, so it serves as an independent reference for
//! closed-form solvers.

use super::fsi_rs::RsResult;
use super::psi::psi_q_canonical;
use super::FsiParams;
use crate::error::{AdmissibilityError, Error, Result};
use crate::physics::{check_unit, Frame, Model};
use nalgebra::{DMatrix, DVector};

/// A coupling function composed with the Lax-curve parameterization.
pub trait CouplingSystem {
    /// Number of unknowns and of residual components.
    fn dim(&self) -> usize;
    /// Starting point of the iteration.
    fn initial_guess(&self) -> Vec<f64>;
    /// Typical magnitude of each unknown (sets finite-difference steps).
    fn unknown_scales(&self) -> Vec<f64>;
    /// Typical magnitude of each residual component (sets the convergence test).
    fn residual_scales(&self) -> Vec<f64>;
    fn residual(&self, x: &[f64], out: &mut [f64]) -> Result<(), AdmissibilityError>;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub max_iterations: usize,
    /// Tolerance on the max-norm of the scaled residual.
    pub tolerance: f64,
    /// Relative finite-difference step.
    pub fd_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iterations: 100,
            tolerance: 1e-12,
            fd_step: 1e-7,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NewtonReport {
    pub x: Vec<f64>,
    /// Newton updates performed.
    pub iterations: usize,
    /// Final scaled residual (max-norm).
    pub residual: f64,
}

fn scaled_norm(r: &[f64], scales: &[f64]) -> f64 {
    r.iter().zip(scales).map(|(a, s)| (a / s).abs()).fold(0.0, f64::max)
}

/// Damped Newton iteration on a coupling system.
pub fn newton_solve<S: CouplingSystem>(sys: &S, opts: &NewtonOptions) -> Result<NewtonReport> {
    let n = sys.dim();
    let us = sys.unknown_scales();
    let rs = sys.residual_scales();
    let mut x = sys.initial_guess();
    let mut r = vec![0.0; n];
    sys.residual(&x, &mut r)?;
    let mut norm = scaled_norm(&r, &rs);
    let mut trial = vec![0.0; n];
    let mut rt = vec![0.0; n];
    for it in 0..opts.max_iterations {
        if norm <= opts.tolerance {
            return Ok(NewtonReport {
                x,
                iterations: it,
                residual: norm,
            });
        }
        let mut jac = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            let h = opts.fd_step * x[j].abs().max(us[j]);
            trial.copy_from_slice(&x);
            trial[j] += h;
            let (hh, forward) = match sys.residual(&trial, &mut rt) {
                Ok(()) => (h, true),
                Err(_) => {
                    trial[j] = x[j] - h;
                    sys.residual(&trial, &mut rt)?;
                    (h, false)
                }
            };
            for i in 0..n {
                let d = (rt[i] - r[i]) / hh;
                jac[(i, j)] = (if forward { d } else { -d }) / rs[i];
            }
        }
        let rhs = DVector::from_iterator(n, r.iter().zip(&rs).map(|(a, s)| -a / s));
        let dx = jac.lu().solve(&rhs).ok_or(Error::OracleFailure {
            iterations: it,
            residual: norm,
        })?;
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..40 {
            for j in 0..n {
                trial[j] = x[j] + t * dx[j];
            }
            if sys.residual(&trial, &mut rt).is_ok() {
                let nt = scaled_norm(&rt, &rs);
                if nt < norm || nt <= opts.tolerance {
                    x.copy_from_slice(&trial);
                    r.copy_from_slice(&rt);
                    norm = nt;
                    accepted = true;
                    break;
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return Err(Error::OracleFailure {
                iterations: it,
                residual: norm,
            });
        }
    }
    if norm <= opts.tolerance {
        return Ok(NewtonReport {
            x,
            iterations: opts.max_iterations,
            residual: norm,
        });
    }
    Err(Error::OracleFailure {
        iterations: opts.max_iterations,
        residual: norm,
    })
}

/// The five-equation fluid–structure coupling system in the normal frame.
///
/// Unknowns `(Sigma1, rho_L, m1_L, m2_L, (rho E)_L)`; the solid coupling state
/// is `U^- - Sigma1 r_{1-}` and the fluid auxiliary datum is
/// `V^+ + lambda (U_L - U^+)`.
#[derive(Debug, Clone)]
pub struct FsiSystem<'a> {
    pub um: [f64; 5],
    pub up: [f64; 4],
    pub vp: [f64; 4],
    pub lambda: f64,
    pub params: &'a FsiParams,
}

impl FsiSystem<'_> {
    pub fn states(&self, x: &[f64]) -> ([f64; 5], [f64; 4], [f64; 4]) {
        let z = self.params.solid.impedance();
        let a = self.params.solid.alpha();
        let s1 = x[0];
        let u_r = [
            self.um[0] - s1,
            self.um[1],
            self.um[2] - s1 * z,
            self.um[3],
            self.um[4] - s1 * a * z,
        ];
        let u_l = [x[1], x[2], x[3], x[4]];
        let mut v_l = [0.0; 4];
        for i in 0..4 {
            v_l[i] = self.vp[i] + self.lambda * (u_l[i] - self.up[i]);
        }
        (u_r, u_l, v_l)
    }

    fn velocity_scale(&self) -> f64 {
        let fl = &self.params.fluid;
        let c = fl
            .primitive(&self.up)
            .map(|w| fl.sound_speed(w.rho, w.p))
            .unwrap_or(0.0);
        c + (self.up[1] / self.up[0]).abs() + self.um[0].abs() + self.lambda
    }

    fn pressure_scale(&self) -> f64 {
        let fl = &self.params.fluid;
        let sv = self.velocity_scale();
        let p = fl.pressure(&self.up).unwrap_or(0.0).abs();
        p + fl.pi + self.up[0] * sv * sv + self.um[2].abs() + self.params.solid.impedance() * sv
    }
}

impl CouplingSystem for FsiSystem<'_> {
    fn dim(&self) -> usize {
        5
    }

    fn initial_guess(&self) -> Vec<f64> {
        vec![0.0, self.up[0], self.up[1], self.up[2], self.up[3]]
    }

    fn unknown_scales(&self) -> Vec<f64> {
        let sv = self.velocity_scale();
        let rho = self.up[0];
        vec![sv, rho, rho * sv, rho * sv, self.up[3].abs() + self.pressure_scale()]
    }

    fn residual_scales(&self) -> Vec<f64> {
        let (sv, sp) = (self.velocity_scale(), self.pressure_scale());
        vec![sv, sp, sv, sp, sp]
    }

    fn residual(&self, x: &[f64], out: &mut [f64]) -> Result<(), AdmissibilityError> {
        let (u_r, u_l, v_l) = self.states(x);
        let r = psi_q_canonical(&u_r, &u_l, &v_l, &self.params.fluid)?;
        out[..5].copy_from_slice(&r);
        Ok(())
    }
}

/// Solves the coupling system numerically for traces in global components.
pub fn oracle_solve(
    um: &[f64],
    up: &[f64],
    vp: &[f64],
    lambda: f64,
    n: [f64; 2],
    params: &FsiParams,
    opts: &NewtonOptions,
) -> Result<(RsResult, NewtonReport)> {
    check_unit(n)?;
    let mut sys = FsiSystem {
        um: [0.0; 5],
        up: [0.0; 4],
        vp: [0.0; 4],
        lambda,
        params,
    };
    params.solid.rotate(um, n, Frame::Into, &mut sys.um);
    params.fluid.rotate(up, n, Frame::Into, &mut sys.up);
    params.fluid.rotate(vp, n, Frame::Into, &mut sys.vp);
    if !(sys.up[0] > 0.0) {
        return Err(AdmissibilityError::Density(sys.up[0]).into());
    }
    let report = newton_solve(&sys, opts)?;
    let (u_r, u_l, v_l) = sys.states(&report.x);
    let mut out = RsResult {
        u_r,
        u_l,
        v_l,
        sigma1: report.x[0],
    };
    params.solid.rotate(&u_r, n, Frame::OutOf, &mut out.u_r);
    params.fluid.rotate(&u_l, n, Frame::OutOf, &mut out.u_l);
    params.fluid.rotate(&v_l, n, Frame::OutOf, &mut out.v_l);
    Ok((out, report))
}
