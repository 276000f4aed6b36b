//! Randomized comparison of the closed-form Riemann solver with the
//! root-finding oracle, plus its structural properties on the same inputs.

use super::guard::admissibility_guard;
use super::sampling::{characteristic_scales, guarded_samples, random_sample, relative_error, RsSample};
use super::{oracle_solve, riemann_solve, NewtonOptions, RsResult};
use crate::error::Result;
use crate::physics::{Frame, Model};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SweepReport {
    pub seed: u64,
    pub samples: usize,
    /// Draws rejected by the admissibility guard before `samples` were accepted.
    pub rejected: usize,
    pub max_oracle_error: f64,
    pub oracle_failures: usize,
    pub max_oracle_residual: f64,
    pub max_idempotency_error: f64,
    pub max_consistency_error: f64,
    /// Guarded samples with `rho_L <= 0` or `p_L < -pi`.
    pub inadmissible: usize,
    /// Smallest `rho_L / rho^+` and `(p_L + pi) / (p^+ + pi)` over guarded samples.
    pub min_density_ratio: f64,
    pub min_pressure_ratio: f64,
    /// Unguarded draws and how many of them violate the bounds.
    pub unguarded_draws: usize,
    pub unguarded_violating: usize,
    /// Violating draws whose output is still admissible.
    pub violating_admissible_output: usize,
    /// Draws that satisfy the three explicit bounds but not the exact pressure condition.
    pub literal_only: usize,
    /// Of those, draws whose output pressure is below `-pi`.
    pub literal_only_inadmissible: usize,
}

/// Rebuilds `s` so that the traces already satisfy the coupling conditions.
fn coupled_copy(s: &RsSample) -> RsSample {
    let (mut um, mut up) = ([0.0; 5], [0.0; 4]);
    s.params.solid.rotate(&s.um, s.n, Frame::Into, &mut um);
    s.params.fluid.rotate(&s.up, s.n, Frame::Into, &mut up);
    let w = s.params.fluid.primitive(&up).expect("guarded sample");
    um[0] = w.v[0];
    um[2] = -w.p;
    um[3] = 0.0;
    let mut out = *s;
    s.params.solid.rotate(&um, s.n, Frame::OutOf, &mut out.um);
    out
}

fn admissible(r: &RsResult, s: &RsSample) -> bool {
    let fl = &s.params.fluid;
    r.u_l[0] > 0.0 && fl.pressure(&r.u_l).is_ok_and(|p| p >= -fl.pi)
}

/// Runs the sweep on `count` guarded samples and `count` unguarded draws.
pub fn rs_sweep(seed: u64, count: usize) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (samples, rejected) = guarded_samples(&mut rng, count);
    let mut rep = SweepReport {
        seed,
        samples: samples.len(),
        rejected,
        min_density_ratio: f64::INFINITY,
        min_pressure_ratio: f64::INFINITY,
        ..Default::default()
    };
    let opts = NewtonOptions::default();
    for s in &samples {
        let scales = characteristic_scales(s);
        let r = riemann_solve(&s.um, &s.up, &s.vp, s.lambda, s.n, &s.params)?;
        match oracle_solve(&s.um, &s.up, &s.vp, s.lambda, s.n, &s.params, &opts) {
            Ok((o, nr)) => {
                rep.max_oracle_error = rep.max_oracle_error.max(relative_error(&r, &o, &scales));
                rep.max_oracle_residual = rep.max_oracle_residual.max(nr.residual);
            }
            Err(_) => rep.oracle_failures += 1,
        }
        let again = riemann_solve(&r.u_r, &r.u_l, &r.v_l, s.lambda, s.n, &s.params)?;
        let fixed = RsResult { sigma1: 0.0, ..r };
        rep.max_idempotency_error = rep.max_idempotency_error.max(relative_error(&again, &fixed, &scales));

        let c = coupled_copy(s);
        let rc = riemann_solve(&c.um, &c.up, &c.vp, c.lambda, c.n, &c.params)?;
        let input = RsResult {
            u_r: c.um,
            u_l: c.up,
            v_l: c.vp,
            sigma1: 0.0,
        };
        rep.max_consistency_error = rep.max_consistency_error.max(relative_error(&rc, &input, &characteristic_scales(&c)));

        if !admissible(&r, s) {
            rep.inadmissible += 1;
        }
        let fl = &s.params.fluid;
        let (w_in, p_out) = (fl.primitive(&s.up)?, fl.pressure(&r.u_l).unwrap_or(f64::NAN));
        rep.min_density_ratio = rep.min_density_ratio.min(r.u_l[0] / w_in.rho);
        rep.min_pressure_ratio = rep.min_pressure_ratio.min((p_out + fl.pi) / (w_in.p + fl.pi));
    }
    for _ in 0..count {
        let s = random_sample(&mut rng);
        rep.unguarded_draws += 1;
        let g = admissibility_guard(&s.um, &s.up, s.lambda, s.n, &s.params)?;
        let out = riemann_solve(&s.um, &s.up, &s.vp, s.lambda, s.n, &s.params);
        let ok = out.as_ref().is_ok_and(|r| admissible(r, &s));
        if !g.all_hold() {
            rep.unguarded_violating += 1;
            if ok {
                rep.violating_admissible_output += 1;
            }
        }
        if g.literal_hold() && !g.pressure_exact {
            rep.literal_only += 1;
            if !ok {
                rep.literal_only_inadmissible += 1;
            }
        }
    }
    Ok(rep)
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Riemann solver sweep (seed {})", self.seed)?;
        writeln!(f, "  guarded samples           {} ({} draws rejected)", self.samples, self.rejected)?;
        writeln!(f, "  oracle max relative error {:.3e}", self.max_oracle_error)?;
        writeln!(f, "  oracle max residual       {:.3e}", self.max_oracle_residual)?;
        writeln!(f, "  oracle failures           {}", self.oracle_failures)?;
        writeln!(f, "  idempotency max error     {:.3e}", self.max_idempotency_error)?;
        writeln!(f, "  consistency max error     {:.3e}", self.max_consistency_error)?;
        writeln!(f, "  inadmissible outputs      {}", self.inadmissible)?;
        writeln!(f, "  min rho_L / rho+          {:.3e}", self.min_density_ratio)?;
        writeln!(f, "  min (p_L+pi) / (p+ + pi)  {:.3e}", self.min_pressure_ratio)?;
        let freq = self.unguarded_violating as f64 / self.unguarded_draws.max(1) as f64;
        writeln!(
            f,
            "  unguarded draws           {} ({} violate the bounds, frequency {:.3}; {} of those still admissible)",
            self.unguarded_draws, self.unguarded_violating, freq, self.violating_admissible_output
        )?;
        write!(
            f,
            "  explicit bounds only      {} draws ({} with p_L < -pi)",
            self.literal_only, self.literal_only_inadmissible
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_is_clean() {
        let r = rs_sweep(3, 50).unwrap();
        assert_eq!(r.samples, 50);
        assert_eq!(r.oracle_failures, 0);
        assert!(r.max_oracle_error <= 1e-10, "{r}");
        assert!(r.max_idempotency_error <= 1e-12, "{r}");
        assert!(r.max_consistency_error <= 1e-12, "{r}");
        assert_eq!(r.inadmissible, 0);
    }
}
