//! Simulation configuration read from TOML.
//!
//! Every section rejects unknown keys. See `configs/` for annotated examples.

use crate::coupling::FsiParams;
use crate::dg::{BoundaryPolicy, InterfaceShear, OperatorOptions, SpeedMode};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::mesh::{Mesh, Periodicity, Rect, Subdomain};
use crate::physics::{ElasticParams, FluidParams};
use crate::time::rk::Scheme;
use crate::time::{ImexPair, Tableau};
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub mesh: MeshConfig,
    pub solid: SolidConfig,
    pub fluid: FluidConfig,
    #[serde(default)]
    pub scheme: SchemeConfig,
    pub run: RunConfig,
    #[serde(default)]
    pub relaxation: RelaxationConfig,
    #[serde(default)]
    pub cavitation: CavitationConfig,
    #[serde(default)]
    pub wave: WaveConfig,
}

/// Domains as `[x_min, x_max, y_min, y_max]` with cell counts `[nx, ny]`.
/// Either domain may be omitted for an uncoupled run.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshConfig {
    pub solid: Option<[f64; 4]>,
    pub solid_cells: Option<[usize; 2]>,
    pub fluid: Option<[f64; 4]>,
    pub fluid_cells: Option<[usize; 2]>,
    #[serde(default)]
    pub periodic_x: bool,
    #[serde(default)]
    pub periodic_y: bool,
}

/// Either `c1`/`c2` or the Lamé pair `mu`/`lame_lambda`.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolidConfig {
    pub rho: f64,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub mu: Option<f64>,
    pub lame_lambda: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FluidConfig {
    pub gamma: f64,
    #[serde(default)]
    pub pi: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchemeConfig {
    /// Number of 1D modes; polynomials of degree below `p`.
    pub p: usize,
    /// Gauss points per direction (default `max(5, p)`).
    pub quadrature: Option<usize>,
    /// SSP order of the explicit scheme (default `min(p, 3)`).
    pub ssp_order: Option<usize>,
    pub cfl: f64,
    /// Multiply the time step by `1 / (2 (2p - 1))`.
    pub dg_cfl_scaling: bool,
    pub limiter: bool,
    pub tvb_m: f64,
    /// Scale fluid cells so density and pressure stay admissible at all quadrature nodes.
    pub positivity: bool,
    /// Relative floor of the positivity limiter, in `(0, 1)`.
    pub positivity_floor: f64,
    /// `local` or `global`.
    pub flux_speed: String,
    /// Factor applied to the fluid wave speed.
    pub interface_safety: f64,
    /// Solid coupling state shear part: `traction-free` or `copy`.
    pub interface_shear: String,
    /// `outflow`, `reflective` or `absorbing`.
    pub boundary_solid: String,
    pub boundary_fluid: String,
    pub parallel: bool,
}

impl Default for SchemeConfig {
    fn default() -> Self {
        SchemeConfig {
            p: 3,
            quadrature: None,
            ssp_order: None,
            cfl: 0.7,
            dg_cfl_scaling: true,
            limiter: true,
            tvb_m: 50.0,
            positivity: true,
            positivity_floor: 0.1,
            flux_speed: "local".into(),
            interface_safety: 1.0,
            interface_shear: "traction-free".into(),
            boundary_solid: "outflow".into(),
            boundary_fluid: "outflow".into(),
            parallel: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// `cavitation`, `equilibrium`, `elastic-wave` or `entropy-wave`.
    pub scenario: String,
    pub t_end: f64,
    /// Time between snapshots; none when absent.
    pub snapshot_interval: Option<f64>,
    pub output_dir: Option<PathBuf>,
    pub max_steps: Option<usize>,
    /// Fixed time step overriding the CFL condition.
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelaxationConfig {
    pub enabled: bool,
    pub epsilon: f64,
    /// `ssp2-222` or `unsplit`.
    pub pair: String,
}

impl Default for RelaxationConfig {
    fn default() -> Self {
        RelaxationConfig {
            enabled: false,
            epsilon: 1e-6,
            pair: "ssp2-222".into(),
        }
    }
}

/// Gas bubble in a pressurized gas next to a prestressed wall.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CavitationConfig {
    pub center: [f64; 2],
    pub radius: f64,
    pub p_outside: f64,
    pub t_outside: f64,
    pub p_inside: f64,
    pub t_inside: f64,
    pub gas_constant: f64,
}

impl Default for CavitationConfig {
    fn default() -> Self {
        CavitationConfig {
            center: [0.02, 0.0],
            radius: 0.015,
            p_outside: 2e7,
            t_outside: 293.0,
            p_inside: 1e6,
            t_inside: 693.0,
            gas_constant: 287.058,
        }
    }
}

/// Smooth periodic waves; `mode` counts periods across the domain per direction.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WaveConfig {
    pub mode: [i32; 2],
    pub amplitude: f64,
    pub density: f64,
    pub velocity: [f64; 2],
    pub pressure: f64,
}

impl Default for WaveConfig {
    fn default() -> Self {
        WaveConfig {
            mode: [1, 1],
            amplitude: 0.2,
            density: 1.0,
            velocity: [1.0, 0.5],
            pressure: 1.0,
        }
    }
}

fn rect(r: [f64; 4]) -> Rect {
    Rect::new(r[0], r[1], r[2], r[3])
}

fn policy(s: &str) -> Result<BoundaryPolicy> {
    match s {
        "outflow" => Ok(BoundaryPolicy::Outflow),
        "reflective" => Ok(BoundaryPolicy::Reflective),
        "absorbing" => Ok(BoundaryPolicy::Absorbing),
        _ => Err(Error::Config(format!(
            "unknown boundary policy '{s}' (expected outflow, reflective or absorbing)"
        ))),
    }
}

impl SimConfig {
    pub fn from_toml(text: &str) -> Result<SimConfig> {
        let c: SimConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<SimConfig> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    /// Checks everything that can be checked without building the mesh.
    pub fn validate(&self) -> Result<()> {
        let s = &self.scheme;
        if s.p < 1 {
            return Err(Error::Config("p must be at least 1".into()));
        }
        if let Some(nq) = s.quadrature {
            if nq < s.p {
                return Err(Error::Config(format!("{nq} quadrature points are too few for p = {}", s.p)));
            }
        }
        if !(s.cfl > 0.0 && s.cfl <= 1.0) {
            return Err(Error::Config(format!("cfl {} is not in (0, 1]", s.cfl)));
        }
        if !(s.positivity_floor > 0.0 && s.positivity_floor < 1.0) {
            return Err(Error::Config("positivity_floor must lie in (0, 1)".into()));
        }
        if !(s.tvb_m >= 0.0) {
            return Err(Error::Config("tvb_m must be nonnegative".into()));
        }
        if !(s.interface_safety >= 1.0) {
            return Err(Error::Config("interface_safety must be at least 1".into()));
        }
        self.options()?;
        policy(&s.boundary_solid)?;
        policy(&s.boundary_fluid)?;
        self.params()?;
        self.scheme()?;
        let r = &self.run;
        if !(r.t_end > 0.0 && r.t_end.is_finite()) {
            return Err(Error::Config("t_end must be positive".into()));
        }
        if let Some(dt) = r.dt {
            if !(dt > 0.0) {
                return Err(Error::Config("dt must be positive".into()));
            }
        }
        if let Some(i) = r.snapshot_interval {
            if !(i > 0.0) {
                return Err(Error::Config("snapshot_interval must be positive".into()));
            }
        }
        let m = &self.mesh;
        if m.solid.is_some() != m.solid_cells.is_some() || m.fluid.is_some() != m.fluid_cells.is_some() {
            return Err(Error::Config("each domain needs both its rectangle and its cell counts".into()));
        }
        if m.solid.is_none() && m.fluid.is_none() {
            return Err(Error::Config("no domain given".into()));
        }
        let c = &self.cavitation;
        if !(c.radius > 0.0 && c.p_outside > 0.0 && c.p_inside > 0.0 && c.t_outside > 0.0 && c.t_inside > 0.0 && c.gas_constant > 0.0) {
            return Err(Error::Config("cavitation radius, pressures, temperatures and gas constant must be positive".into()));
        }
        super::scenario::Scenario::parse(&r.scenario)?;
        Ok(())
    }

    pub fn params(&self) -> Result<FsiParams> {
        let s = &self.solid;
        let solid = match (s.c1, s.c2, s.mu, s.lame_lambda) {
            (Some(c1), Some(c2), None, None) => ElasticParams::new(s.rho, c1, c2)?,
            (None, None, Some(mu), Some(l)) => ElasticParams::from_lame(s.rho, mu, l)?,
            _ => return Err(Error::Config("solid needs either c1 and c2 or mu and lame_lambda".into())),
        };
        Ok(FsiParams {
            solid,
            fluid: FluidParams::new(self.fluid.gamma, self.fluid.pi)?,
        })
    }

    pub fn speed_mode(&self) -> Result<SpeedMode> {
        match self.scheme.flux_speed.as_str() {
            "local" => Ok(SpeedMode::Local),
            "global" => Ok(SpeedMode::Global),
            s => Err(Error::Config(format!("unknown flux speed '{s}' (expected local or global)"))),
        }
    }

    pub fn quadrature(&self) -> usize {
        self.scheme.quadrature.unwrap_or(self.scheme.p.max(5))
    }

    pub fn scheme(&self) -> Result<Scheme> {
        let r = &self.relaxation;
        if r.enabled {
            if !(r.epsilon > 0.0) {
                return Err(Error::Config("relaxation epsilon must be positive".into()));
            }
            Ok(Scheme::Imex {
                pair: ImexPair::by_name(&r.pair)?,
                epsilon: r.epsilon,
            })
        } else {
            let k = self.scheme.ssp_order.unwrap_or(self.scheme.p.min(3));
            Ok(Scheme::Explicit(Tableau::ssp(k)?))
        }
    }

    pub fn options(&self) -> Result<OperatorOptions> {
        Ok(OperatorOptions {
            boundary: [policy(&self.scheme.boundary_solid)?, policy(&self.scheme.boundary_fluid)?],
            speed_mode: self.speed_mode()?,
            interface_shear: match self.scheme.interface_shear.as_str() {
                "traction-free" => InterfaceShear::TractionFree,
                "copy" => InterfaceShear::Copy,
                s => return Err(Error::Config(format!("unknown interface_shear '{s}' (expected traction-free or copy)"))),
            },
            exec: if self.scheme.parallel {
                Execution::Parallel
            } else {
                Execution::Sequential
            },
        })
    }

    pub fn build_mesh(&self) -> Result<Mesh> {
        let m = &self.mesh;
        match (m.solid, m.solid_cells, m.fluid, m.fluid_cells) {
            (Some(s), Some(sc), Some(f), Some(fc)) => {
                if m.periodic_x {
                    return Err(Error::Config("coupled meshes are only periodic along the interface (periodic_y)".into()));
                }
                Mesh::build(rect(s), rect(f), (sc[0], sc[1]), (fc[0], fc[1]), m.periodic_y)
            }
            (Some(r), Some(c), None, None) | (None, None, Some(r), Some(c)) => {
                let sub = if m.solid.is_some() { Subdomain::Solid } else { Subdomain::Fluid };
                Mesh::single(sub, rect(r), c[0], c[1], Periodicity { x: m.periodic_x, y: m.periodic_y })
            }
            _ => Err(Error::Config("each domain needs both its rectangle and its cell counts".into())),
        }
    }

    pub fn relaxed(&self) -> bool {
        self.relaxation.enabled
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
[mesh]
solid = [-0.22, 0.0, -0.22, 0.22]
solid_cells = [4, 8]
fluid = [0.0, 0.11, -0.22, 0.22]
fluid_cells = [2, 8]

[solid]
rho = 1226.0
mu = 1.4093e9
lame_lambda = 1.4093e9

[fluid]
gamma = 1.4

[run]
scenario = "cavitation"
t_end = 1e-5
"#;

    #[test]
    fn defaults_and_material() {
        let c = SimConfig::from_toml(BASE).unwrap();
        assert_eq!(c.scheme.p, 3);
        assert_eq!(c.quadrature(), 5);
        let p = c.params().unwrap();
        assert!((p.solid.c1 - (2.0 * 2.0 * 1.4093e9 / 1226.0f64).sqrt()).abs() < 1e-9);
        assert!(matches!(c.scheme().unwrap(), Scheme::Explicit(t) if t.stages() == 3));
        assert_eq!(c.build_mesh().unwrap().cells.len(), 48);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = BASE.replace("gamma = 1.4", "gamma = 1.4\ncolour = 3");
        assert!(matches!(SimConfig::from_toml(&bad), Err(Error::Config(_))));
        let bad = format!("{BASE}\n[extra]\na = 1\n");
        assert!(SimConfig::from_toml(&bad).is_err());
    }

    #[test]
    fn invalid_values_are_rejected() {
        for (from, to) in [
            ("t_end = 1e-5", "t_end = 1e-5\n[scheme]\ncfl = 1.5"),
            ("t_end = 1e-5", "t_end = 1e-5\n[scheme]\np = 0"),
            ("t_end = 1e-5", "t_end = 1e-5\n[scheme]\nflux_speed = \"upwind\""),
            ("t_end = 1e-5", "t_end = 1e-5\n[scheme]\nboundary_fluid = \"sticky\""),
            ("t_end = 1e-5", "t_end = 1e-5\n[relaxation]\nenabled = true\npair = \"rk4\""),
            ("\"cavitation\"", "\"vortex\""),
            ("lame_lambda = 1.4093e9", "c1 = 3.0"),
            ("fluid_cells = [2, 8]", "fluid_cells = [2, 6]"),
        ] {
            let text = BASE.replace(from, to);
            let r = SimConfig::from_toml(&text).and_then(|c| c.build_mesh().map(|_| ()));
            assert!(r.is_err(), "{to}");
        }
    }
}
