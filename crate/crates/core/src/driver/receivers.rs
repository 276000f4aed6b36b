//! Point receivers in the solid and wavefront arrival times.
//!
//! A dilatation receiver records the change of `sigma11` at a point. A shear
//! receiver records `rho c2^2 int curl(w) dt`, with the curl averaged over a
//! small square as circulation / area. Dilatation waves carry no curl, and
//! for a plane shear wave this quantity equals the shear stress it carries,
//! so both signals are stresses in Pa.

use super::run::Simulation;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Signal {
    NormalStress,
    /// Half-width of the averaging square.
    Shear { half: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Receiver {
    pub x: [f64; 2],
    pub signal: Signal,
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    base: Option<f64>,
    last: Option<(f64, f64)>,
}

/// Points per side of the circulation integral.
const SIDE_POINTS: usize = 40;

fn solid_state(sim: &Simulation, x: [f64; 2]) -> Result<Vec<f64>> {
    sim.probe(x)
        .filter(|u| u.len() == 5)
        .ok_or_else(|| Error::Domain(format!("receiver point {x:?} is not in the solid")))
}

/// Average of `curl w` over the square of half-width `h` around `x`.
pub fn box_curl(sim: &Simulation, x: [f64; 2], h: f64) -> Result<f64> {
    let ds = 2.0 * h / SIDE_POINTS as f64;
    let mut circ = 0.0;
    for i in 0..SIDE_POINTS {
        let t = -h + (i as f64 + 0.5) * ds;
        let e = solid_state(sim, [x[0] + h, x[1] + t])?;
        let w = solid_state(sim, [x[0] - h, x[1] + t])?;
        let n = solid_state(sim, [x[0] + t, x[1] + h])?;
        let s = solid_state(sim, [x[0] + t, x[1] - h])?;
        circ += (e[1] - w[1] - n[0] + s[0]) * ds;
    }
    Ok(circ / (4.0 * h * h))
}

impl Receiver {
    pub fn new(x: [f64; 2], signal: Signal) -> Receiver {
        Receiver {
            x,
            signal,
            times: Vec::new(),
            values: Vec::new(),
            base: None,
            last: None,
        }
    }

    /// Appends the signal at the current time of `sim`.
    pub fn record(&mut self, sim: &Simulation) -> Result<()> {
        let v = match self.signal {
            Signal::NormalStress => {
                let s = solid_state(sim, self.x)?[2];
                s - *self.base.get_or_insert(s)
            }
            Signal::Shear { half } => {
                let p = &sim.op.params.solid;
                let rate = p.rho * p.c2 * p.c2 * box_curl(sim, self.x, half)?;
                let acc = self.values.last().copied().unwrap_or(0.0);
                // trapezoidal rule in time
                let v = match self.last {
                    Some((t, r)) => acc + 0.5 * (rate + r) * (sim.time - t),
                    None => 0.0,
                };
                self.last = Some((sim.time, rate));
                v
            }
        };
        self.times.push(sim.time);
        self.values.push(v);
        Ok(())
    }

    pub fn arrival(&self, threshold: f64) -> Option<f64> {
        first_arrival(&self.times, &self.values, threshold)
    }
}

/// First time `|v|` reaches `threshold`, interpolated linearly between samples.
pub fn first_arrival(times: &[f64], values: &[f64], threshold: f64) -> Option<f64> {
    let i = values.iter().position(|v| v.abs() >= threshold)?;
    if i == 0 {
        return Some(times[0]);
    }
    let (a, b) = (values[i - 1].abs(), values[i].abs());
    Some(times[i - 1] + (threshold - a) / (b - a) * (times[i] - times[i - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrival_interpolates() {
        let t = [0.0, 1.0, 2.0, 3.0];
        let v = [0.0, -1.0, -3.0, 5.0];
        assert_eq!(first_arrival(&t, &v, 2.0), Some(1.5));
        assert_eq!(first_arrival(&t, &v, 6.0), None);
        assert_eq!(first_arrival(&t, &[4.0, 0.0, 0.0, 0.0], 1.0), Some(0.0));
    }

    #[test]
    fn shear_receiver_matches_plane_shear_wave() {
        // plane wave along x on a doubly periodic solid: curl w = d/dx w2
        let text = r#"
[mesh]
solid = [0.0, 1.0, 0.0, 1.0]
solid_cells = [16, 16]
periodic_x = true
periodic_y = true

[solid]
rho = 1.0
c1 = 2.0
c2 = 1.0

[fluid]
gamma = 1.4

[scheme]
p = 3
limiter = false
positivity = false
cfl = 0.5

[run]
scenario = "elastic-wave"
t_end = 0.05

[wave]
mode = [1, 0]
amplitude = 0.01
"#;
        let mut sim = Simulation::from_toml(text).unwrap();
        let x = [0.3, 0.5];
        let mut rec = Receiver::new(x, Signal::Shear { half: 0.02 });
        let mut stress = Receiver::new(x, Signal::NormalStress);
        rec.record(&sim).unwrap();
        stress.record(&sim).unwrap();
        let s0 = sim.probe(x).unwrap()[3];
        sim.run_with(|s, _| {
            rec.record(s)?;
            stress.record(s)
        })
        .unwrap();
        // right-going shear wave: d/dt sigma12 = rho c2^2 d/dx w2 = rho c2^2 curl w
        let ds = sim.probe(x).unwrap()[3] - s0;
        let got = *rec.values.last().unwrap();
        assert!((got - ds).abs() <= 0.01 * ds.abs(), "{got} vs {ds}");
        assert_eq!(stress.values.len(), rec.values.len());
    }
}
