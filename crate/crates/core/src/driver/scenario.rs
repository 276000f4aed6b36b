//! Initial data of the built-in scenarios.

use super::config::SimConfig;
use crate::coupling::FsiParams;
use crate::error::{Error, Result};
use crate::mesh::{Mesh, Subdomain};
use crate::physics::{Frame, Model};
use std::f64::consts::TAU;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Hot low-pressure gas bubble next to a prestressed elastic wall.
    Cavitation,
    /// The cavitation state without the bubble; a steady coupled state.
    Equilibrium,
    /// Superposed dilatation and shear plane waves in a periodic solid.
    ElasticWave,
    /// Density wave advected by a uniform flow in a periodic gas.
    EntropyWave,
}

impl Scenario {
    pub fn parse(name: &str) -> Result<Scenario> {
        match name {
            "cavitation" => Ok(Scenario::Cavitation),
            "equilibrium" => Ok(Scenario::Equilibrium),
            "elastic-wave" => Ok(Scenario::ElasticWave),
            "entropy-wave" => Ok(Scenario::EntropyWave),
            _ => Err(Error::Config(format!(
                "unknown scenario '{name}' (expected cavitation, equilibrium, elastic-wave or entropy-wave)"
            ))),
        }
    }

    /// Whether [`Scenario::state`] is the exact solution for all times.
    pub fn has_exact_solution(self) -> bool {
        matches!(self, Scenario::ElasticWave | Scenario::EntropyWave | Scenario::Equilibrium)
    }

    /// Rejects meshes and parameters the scenario is not defined on.
    pub fn check(self, cfg: &SimConfig, mesh: &Mesh) -> Result<()> {
        let has = |s| mesh.count(s) > 0;
        let (solid, fluid) = (has(Subdomain::Solid), has(Subdomain::Fluid));
        let ok = match self {
            Scenario::Cavitation | Scenario::Equilibrium => solid && fluid,
            Scenario::ElasticWave => solid && !fluid,
            Scenario::EntropyWave => fluid && !solid,
        };
        if !ok {
            return Err(Error::Config(format!("scenario {self:?} does not fit the configured domains")));
        }
        if matches!(self, Scenario::Cavitation | Scenario::Equilibrium) && cfg.fluid.pi != 0.0 {
            return Err(Error::Config("the gas bubble scenarios need an ideal gas (pi = 0)".into()));
        }
        if matches!(self, Scenario::ElasticWave | Scenario::EntropyWave) {
            let m = &cfg.mesh;
            if !(m.periodic_x && m.periodic_y) {
                return Err(Error::Config("wave scenarios need a doubly periodic domain".into()));
            }
        }
        if self == Scenario::Cavitation {
            let c = cfg.cavitation.center;
            let f = cfg.mesh.fluid.unwrap_or_default();
            if !(c[0] > f[0] && c[0] < f[1] && c[1] > f[2] && c[1] < f[3]) {
                return Err(Error::Config("bubble center lies outside the fluid domain".into()));
            }
        }
        Ok(())
    }

    /// Physical state at `x` and time `t` (initial data for `t = 0`).
    pub fn state(self, cfg: &SimConfig, params: &FsiParams, sub: Subdomain, x: [f64; 2], t: f64, out: &mut [f64]) {
        match self {
            Scenario::Cavitation | Scenario::Equilibrium => {
                let c = &cfg.cavitation;
                match sub {
                    Subdomain::Solid => out[..5].copy_from_slice(&[0.0, 0.0, -c.p_outside, 0.0, 0.0]),
                    Subdomain::Fluid => {
                        let r = (x[0] - c.center[0]).hypot(x[1] - c.center[1]);
                        let (p, temp) = if self == Scenario::Cavitation && r < c.radius {
                            (c.p_inside, c.t_inside)
                        } else {
                            (c.p_outside, c.t_outside)
                        };
                        let rho = p / (c.gas_constant * temp);
                        out[..4].copy_from_slice(&params.fluid.conserved(rho, [0.0, 0.0], p));
                    }
                }
            }
            Scenario::ElasticWave => {
                let (k, d) = wave_vector(cfg, Subdomain::Solid);
                let s = &params.solid;
                let a = cfg.wave.amplitude;
                let xi = d[0] * x[0] + d[1] * x[1];
                let f = a * (k * (xi - s.c1 * t)).sin();
                let g = 0.5 * a * (k * (xi - s.c2 * t)).cos();
                let z1 = s.rho * s.c1;
                let normal = [f, g, -z1 * f, -s.rho * s.c2 * g, -s.alpha() * z1 * f];
                s.rotate(&normal, d, Frame::OutOf, out);
            }
            Scenario::EntropyWave => {
                let (k, d) = wave_vector(cfg, Subdomain::Fluid);
                let w = &cfg.wave;
                let xi = d[0] * (x[0] - w.velocity[0] * t) + d[1] * (x[1] - w.velocity[1] * t);
                let rho = w.density * (1.0 + w.amplitude * (k * xi).sin());
                out[..4].copy_from_slice(&params.fluid.conserved(rho, w.velocity, w.pressure));
            }
        }
    }
}

/// Wave number and unit direction of the periodic mode on the domain of `sub`.
fn wave_vector(cfg: &SimConfig, sub: Subdomain) -> (f64, [f64; 2]) {
    let r = match sub {
        Subdomain::Solid => cfg.mesh.solid,
        Subdomain::Fluid => cfg.mesh.fluid,
    }
    .unwrap_or([0.0, 1.0, 0.0, 1.0]);
    let m = cfg.wave.mode;
    let kv = [TAU * m[0] as f64 / (r[1] - r[0]), TAU * m[1] as f64 / (r[3] - r[2])];
    let k = kv[0].hypot(kv[1]);
    (k, [kv[0] / k, kv[1] / k])
}
