//! Time loop.

use super::config::SimConfig;
use super::output::{write_snapshot, DiagnosticsWriter};
use super::scenario::Scenario;
use crate::basis::Basis;
use crate::dg::{BlockKind, Chain, DgField, Limiter, NoLimiter, Operator, PositivityLimiter, TvbLimiter};
use crate::error::{Error, Result};
use crate::mesh::Subdomain;
use crate::time::cfl::{compute_dt, dg_factor};
use crate::time::DgStepper;
use std::path::PathBuf;

/// What happened in one step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepInfo {
    pub step: usize,
    /// Time at the end of the step.
    pub time: f64,
    pub dt: f64,
    pub lambda: [f64; 2],
    pub max_psi_u: [f64; 2],
    /// Domain integrals of the physical variables per subdomain.
    pub totals: [Vec<f64>; 2],
    pub limited_cells: usize,
}

/// Running balance of the physical variables per subdomain.
#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    pub initial: [Vec<f64>; 2],
    /// Time-integrated outward flux through the outer boundary.
    pub boundary: [Vec<f64>; 2],
    /// Time-integrated outward flux through the interface.
    pub interface: [Vec<f64>; 2],
}

impl Ledger {
    /// `total(t) - total(0) + outflow` per variable; zero for a conservative scheme.
    pub fn imbalance(&self, totals: &[Vec<f64>; 2]) -> [Vec<f64>; 2] {
        std::array::from_fn(|i| {
            (0..totals[i].len())
                .map(|k| totals[i][k] - self.initial[i][k] + self.boundary[i][k] + self.interface[i][k])
                .collect()
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub steps: usize,
    pub time: f64,
    pub reached_end: bool,
    /// Largest interface residual over the whole run.
    pub max_psi_u: [f64; 2],
    pub snapshots: Vec<PathBuf>,
    pub imbalance: [Vec<f64>; 2],
}

pub struct Simulation {
    pub config: SimConfig,
    pub scenario: Scenario,
    pub op: Operator,
    pub q: DgField,
    pub time: f64,
    pub steps: usize,
    pub ledger: Ledger,
    pub max_psi_u: [f64; 2],
    stepper: DgStepper,
    limiter: Box<dyn Limiter>,
    nphys: [usize; 2],
}

impl Simulation {
    pub fn new(config: SimConfig) -> Result<Simulation> {
        config.validate()?;
        let scenario = Scenario::parse(&config.run.scenario)?;
        let mesh = config.build_mesh()?;
        scenario.check(&config, &mesh)?;
        let params = config.params()?;
        let basis = Basis::new(config.scheme.p, config.quadrature())?;
        let mut op = Operator::new(mesh, basis, params, config.options()?);
        let nvars = [5, if config.relaxed() { 12 } else { 4 }];
        let mut chain: Vec<Box<dyn Limiter>> = Vec::new();
        if config.scheme.limiter {
            chain.push(Box::new(TvbLimiter { m: config.scheme.tvb_m }));
        }
        if config.scheme.positivity {
            chain.push(Box::new(PositivityLimiter {
                eps: config.scheme.positivity_floor,
            }));
        }
        let limiter: Box<dyn Limiter> = match chain.len() {
            0 => Box::new(NoLimiter),
            _ => Box::new(Chain(chain)),
        };
        let mut q = op.project(nvars, |sub, x, out| scenario.state(&config, &params, sub, x, 0.0, out));
        limiter.apply(&op, &mut q)?;
        let q = op.equilibrium(&q)?;
        q.check_finite(&op.mesh)?;
        op.set_boundary_reference(&q);
        let stepper = DgStepper::new(&op, config.scheme()?, nvars)?;
        let nphys = [
            BlockKind::of(Subdomain::Solid, 5)?.physical_vars(),
            BlockKind::of(Subdomain::Fluid, nvars[1])?.physical_vars(),
        ];
        let zero: [Vec<f64>; 2] = std::array::from_fn(|i| vec![0.0; nphys[i]]);
        let ledger = Ledger {
            initial: std::array::from_fn(|i| q.totals(&op.mesh, Subdomain::ALL[i], nphys[i])),
            boundary: zero.clone(),
            interface: zero,
        };
        Ok(Simulation {
            config,
            scenario,
            op,
            q,
            time: 0.0,
            steps: 0,
            ledger,
            max_psi_u: [0.0; 2],
            stepper,
            limiter,
            nphys,
        })
    }

    pub fn from_toml(text: &str) -> Result<Simulation> {
        Self::new(SimConfig::from_toml(text)?)
    }

    /// Wave speeds `[lambda1, lambda2]` of the current state, the fluid one
    /// scaled by the interface safety factor.
    pub fn speeds(&self) -> Result<[f64; 2]> {
        let [l1, l2] = self.op.wave_speeds(&self.q)?;
        Ok([l1, l2 * self.config.scheme.interface_safety])
    }

    pub fn totals(&self) -> [Vec<f64>; 2] {
        std::array::from_fn(|i| self.q.totals(&self.op.mesh, Subdomain::ALL[i], self.nphys[i]))
    }

    /// Largest `|Psi_U|` components over the interface points of the current state.
    pub fn interface_residual(&self) -> Result<[f64; 2]> {
        let nvars = [self.q.blocks[0].nvars, self.q.blocks[1].nvars];
        let mut ws = self.op.workspace(nvars);
        let mut out = self.q.zeros_like();
        Ok(self.op.rhs(&self.q, self.speeds()?, &mut ws, &mut out)?.max_psi_u)
    }

    /// State at `x`, or `None` outside the mesh.
    pub fn probe(&self, x: [f64; 2]) -> Option<Vec<f64>> {
        let gc = self.op.mesh.locate(x)?;
        let cell = &self.op.mesh.cells[gc];
        let b = self.q.block(cell.subdomain);
        let mut u = vec![0.0; b.nvars];
        self.op.basis.evaluate(cell, b.cell(cell.local), b.nvars, cell.to_reference(x), &mut u);
        u.truncate(self.nphys[cell.subdomain.index()]);
        Some(u)
    }

    fn step_size(&self, lambda: [f64; 2]) -> Result<f64> {
        if let Some(dt) = self.config.run.dt {
            return Ok(dt);
        }
        let scale = if self.config.scheme.dg_cfl_scaling {
            dg_factor(self.config.scheme.p)
        } else {
            1.0
        };
        compute_dt(&self.op.mesh, lambda, self.config.scheme.cfl, scale)
    }

    /// Takes one step, shortened so as not to pass `t_stop`.
    pub fn advance(&mut self, t_stop: f64) -> Result<StepInfo> {
        let (step, time) = (self.steps + 1, self.time);
        let ctx = |source: Error| Error::Step {
            step,
            time,
            source: Box::new(source),
        };
        let lambda = self.speeds().map_err(ctx)?;
        let mut dt = self.step_size(lambda).map_err(ctx)?;
        let rest = t_stop - self.time;
        // avoid a sliver step at the end
        if dt >= rest || rest - dt < 1e-9 * dt {
            dt = rest;
        }
        let rep = self
            .stepper
            .step(&self.op, &mut self.q, dt, lambda, self.limiter.as_ref())
            .map_err(ctx)?;
        self.q.check_finite(&self.op.mesh).map_err(ctx)?;
        self.time = if dt == rest { t_stop } else { self.time + dt };
        self.steps = step;
        for i in 0..2 {
            for k in 0..self.nphys[i] {
                self.ledger.boundary[i][k] += rep.boundary_flux[i][k];
                self.ledger.interface[i][k] += rep.interface_flux[i][k];
            }
            self.max_psi_u[i] = self.max_psi_u[i].max(rep.max_psi_u[i]);
        }
        Ok(StepInfo {
            step,
            time: self.time,
            dt,
            lambda,
            max_psi_u: rep.max_psi_u,
            totals: self.totals(),
            limited_cells: rep.limited_cells,
        })
    }

    /// Advances to `t_end`, calling `observe` after every step. Stops early
    /// after `max_steps` steps.
    pub fn run_with(&mut self, mut observe: impl FnMut(&Simulation, &StepInfo) -> Result<()>) -> Result<bool> {
        let t_end = self.config.run.t_end;
        let max = self.config.run.max_steps.unwrap_or(usize::MAX);
        while self.time < t_end {
            if self.steps >= max {
                return Ok(false);
            }
            let info = self.advance(t_end)?;
            observe(self, &info)?;
        }
        Ok(true)
    }

    /// Full run with snapshots and the diagnostics log in the output directory.
    pub fn run(&mut self) -> Result<RunSummary> {
        let dir = self.config.run.output_dir.clone();
        let interval = self.config.run.snapshot_interval;
        let t_end = self.config.run.t_end;
        let mut snapshots = Vec::new();
        let mut diag = match &dir {
            Some(d) => Some(DiagnosticsWriter::create(&d.join("diagnostics.csv"), &self.op)?),
            None => None,
        };
        let mut index = 0;
        if let (Some(d), Some(_)) = (&dir, interval) {
            snapshots.extend(write_snapshot(d, index, self.time, &self.op, &self.q)?);
        }
        let max = self.config.run.max_steps.unwrap_or(usize::MAX);
        let mut reached_end = true;
        while self.time < t_end {
            if self.steps >= max {
                reached_end = false;
                break;
            }
            let target = match interval {
                Some(iv) => (iv * (index + 1) as f64).min(t_end),
                None => t_end,
            };
            let info = self.advance(target)?;
            if let Some(w) = diag.as_mut() {
                w.row(&info)?;
            }
            if self.time >= target && interval.is_some() {
                index += 1;
                if let Some(d) = &dir {
                    snapshots.extend(write_snapshot(d, index, self.time, &self.op, &self.q)?);
                }
            }
        }
        if let Some(w) = diag.as_mut() {
            w.flush()?;
        }
        Ok(RunSummary {
            steps: self.steps,
            time: self.time,
            reached_end,
            max_psi_u: self.max_psi_u,
            snapshots,
            imbalance: self.ledger.imbalance(&self.totals()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn equilibrium(extra: &str) -> Simulation {
        let text = include_str!("../../../../configs/equilibrium.toml")
            .replace("output_dir = \"out/equilibrium\"", extra);
        Simulation::from_toml(&text).unwrap()
    }

    #[test]
    fn equilibrium_stays_constant() {
        let mut sim = equilibrium("");
        sim.config.run.t_end = 1.0;
        sim.config.run.max_steps = Some(100);
        let q0 = sim.q.clone();
        sim.run_with(|_, _| Ok(())).unwrap();
        assert_eq!(sim.steps, 100);
        // coefficients are O(1e7); compare relative to that scale
        let d = sim.q.max_abs_diff(&q0, [5, 4]);
        assert!(d <= 1e-11 * 2e7, "drift {d}");
        assert!(sim.max_psi_u[0] <= 1e-11 && sim.max_psi_u[1] <= 1e-11 * 2e7, "{:?}", sim.max_psi_u);
    }

    #[test]
    fn snapshot_times_are_hit() {
        let dir = tempfile::tempdir().unwrap();
        let extra = format!("output_dir = {:?}", dir.path());
        let mut sim = equilibrium(&extra);
        let s = sim.run().unwrap();
        assert!(s.reached_end);
        assert_eq!(sim.time, 1e-5);
        assert_eq!(s.snapshots.len(), 4);
        assert!(dir.path().join("diagnostics.csv").exists());
    }
}
