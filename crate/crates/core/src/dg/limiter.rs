//! TVB minmod slope limiter on Cartesian cells.
//!
//! Limiting is componentwise on the conserved (or elastic) variables. For
//! axis-aligned faces the rotation into the face-normal frame only permutes
//! components and flips signs, and minmod commutes with both, so the global
//! components are limited directly.

use super::field::DgField;
use super::operator::{BlockKind, Operator};
use crate::basis::{combine, Basis};
use crate::error::{AdmissibilityError, Error, Result};
use crate::exec::for_each_chunk;
use crate::mesh::{Side, Subdomain};

/// A post-stage filter applied to the coefficients.
pub trait Limiter: Sync + Send {
    /// Limits `q` in place and returns the number of modified cells.
    fn apply(&self, op: &Operator, q: &mut DgField) -> Result<usize>;
}

/// Leaves the field untouched.
#[derive(Debug, Clone, Copy, Default)]
pub struct NoLimiter;

impl Limiter for NoLimiter {
    fn apply(&self, _: &Operator, _: &mut DgField) -> Result<usize> {
        Ok(0)
    }
}

/// Shu's TVB limiter with constant `m` (threshold `m h^2`, `h` the full cell width).
#[derive(Debug, Clone, Copy)]
pub struct TvbLimiter {
    pub m: f64,
}

impl Default for TvbLimiter {
    fn default() -> Self {
        TvbLimiter { m: 50.0 }
    }
}

/// Plain minmod.
pub fn minmod(a: f64, b: f64, c: f64) -> f64 {
    if a > 0.0 && b > 0.0 && c > 0.0 {
        a.min(b).min(c)
    } else if a < 0.0 && b < 0.0 && c < 0.0 {
        a.max(b).max(c)
    } else {
        0.0
    }
}

/// TVB-modified minmod: returns `a` when `|a| <= mh2`.
pub fn minmod_tvb(a: f64, b: f64, c: f64, mh2: f64) -> f64 {
    if a.abs() <= mh2 {
        a
    } else {
        minmod(a, b, c)
    }
}

impl TvbLimiter {
    fn limit_block(&self, op: &Operator, q: &mut DgField, sub: Subdomain) -> Result<usize> {
        let b = q.block(sub);
        let kind = BlockKind::of(sub, b.nvars)?;
        let nphys = kind.physical_vars();
        let (nv, nm, p) = (b.nvars, op.basis.nmodes, op.basis.p);
        if p < 2 || b.ncells == 0 {
            return Ok(0);
        }
        let mesh = &op.mesh;
        // frozen snapshot of the cell means
        let mut means = vec![0.0; b.ncells * nphys];
        for c in 0..b.ncells {
            let area = mesh.cells[mesh.global_index(sub, c)].area();
            for k in 0..nphys {
                means[c * nphys + k] = b.get(c, 0, k) / area.sqrt();
            }
        }
        let mut centers = vec![vec![0.0; nm]; 4];
        for side in Side::ALL {
            op.basis.eval_reference(side.reference_point(0.0), &mut centers[side.index()]);
        }
        // per cell: flag, then x and y slopes of the replacement linear function
        let width = 1 + 2 * nphys;
        let mut updates = vec![0.0; b.ncells * width];
        let m = self.m;
        for_each_chunk(op.options.exec, &mut updates, width, |c, out| {
            let gc = mesh.global_index(sub, c);
            let cell = &mesh.cells[gc];
            let s = Basis::scale(cell);
            let coef = b.cell(c);
            let nb = |side: Side| mesh.neighbor(gc, side).map(|n| mesh.cells[n].local);
            let mut limited = false;
            for (axis, (lo, hi)) in [(Side::West, Side::East), (Side::South, Side::North)].into_iter().enumerate() {
                let h = 2.0 * cell.half_widths[axis];
                let mh2 = m * h * h;
                let (nlo, nhi) = (nb(lo), nb(hi));
                for k in 0..nphys {
                    let mean = means[c * nphys + k];
                    let eval = |side: Side| {
                        let phi = &centers[side.index()];
                        s * phi.iter().enumerate().map(|(j, f)| f * coef[j * nv + k]).sum::<f64>()
                    };
                    let dev_hi = eval(hi) - mean;
                    let dev_lo = mean - eval(lo);
                    let dp = nhi.map(|n| means[n * nphys + k] - mean);
                    let dm = nlo.map(|n| mean - means[n * nphys + k]);
                    let (dp, dm) = match (dp, dm) {
                        (Some(a), Some(b)) => (a, b),
                        (Some(a), None) => (a, a),
                        (None, Some(b)) => (b, b),
                        (None, None) => {
                            out[1 + axis * nphys + k] = 0.5 * (dev_hi + dev_lo);
                            continue;
                        }
                    };
                    let lh = minmod_tvb(dev_hi, dp, dm, mh2);
                    let ll = minmod_tvb(dev_lo, dp, dm, mh2);
                    // round-off in the higher modes of a constant state is not limited
                    let tol = 1e-12 * mean.abs();
                    if (lh - dev_hi).abs() > tol || (ll - dev_lo).abs() > tol {
                        limited = true;
                    }
                    out[1 + axis * nphys + k] = minmod_tvb(0.5 * (dev_hi + dev_lo), dp, dm, mh2);
                }
            }
            out[0] = if limited { 1.0 } else { 0.0 };
        });
        let sqrt3 = 3f64.sqrt();
        let bm = q.block_mut(sub);
        let mut count = 0;
        for c in 0..bm.ncells {
            let u = &updates[c * width..(c + 1) * width];
            if u[0] == 0.0 {
                continue;
            }
            count += 1;
            let s = Basis::scale(&mesh.cells[mesh.global_index(sub, c)]);
            let coef = bm.cell_mut(c);
            for j in 1..nm {
                for k in 0..nphys {
                    coef[j * nv + k] = 0.0;
                }
            }
            // linear part a xi + b eta has coefficients 2a / (sqrt3 s) on modes (1,0), (0,1)
            for k in 0..nphys {
                coef[p * nv + k] = 2.0 * u[1 + k] / (sqrt3 * s);
                coef[nv + k] = 2.0 * u[1 + nphys + k] / (sqrt3 * s);
            }
        }
        Ok(count)
    }
}

impl Limiter for TvbLimiter {
    fn apply(&self, op: &Operator, q: &mut DgField) -> Result<usize> {
        let mut n = 0;
        for sub in Subdomain::ALL {
            n += self.limit_block(op, q, sub)?;
        }
        Ok(n)
    }
}

/// Scaling limiter that keeps the fluid density and pressure admissible at
/// every volume and face quadrature node (Zhang and Shu). Cell means are
/// kept; only the higher modes of the conserved variables are scaled.
#[derive(Debug, Clone, Copy)]
pub struct PositivityLimiter {
    /// Relative floor: nodes are kept at `rho >= eps rho_mean` and
    /// `p + pi >= eps (p_mean + pi)`. A tiny floor leaves near-vacuum nodes
    /// whose sound speed then dictates the time step.
    pub eps: f64,
}

impl Default for PositivityLimiter {
    fn default() -> Self {
        PositivityLimiter { eps: 0.1 }
    }
}

impl PositivityLimiter {
    /// Largest `theta` in `[0, 1]` with admissible nodes, for one cell.
    fn theta(&self, op: &Operator, coef: &[f64], nv: usize, s: f64, mean: &[f64; 4]) -> std::result::Result<f64, AdmissibilityError> {
        let fl = &op.params.fluid;
        let nm = op.basis.nmodes;
        let pbar = fl.admissible_primitive(mean)?.p;
        let rho_min = self.eps * mean[0];
        let p_min = self.eps * (pbar + fl.pi) - fl.pi;
        let mut nodes: Vec<[f64; 4]> = Vec::new();
        let mut u = vec![0.0; nv];
        let tables = std::iter::once(&op.basis.vol_values).chain(op.basis.face_values.iter());
        for table in tables {
            for phi in table.chunks_exact(nm) {
                combine(phi, s, coef, nv, &mut u);
                nodes.push([u[0], u[1], u[2], u[3]]);
            }
        }
        let at = |t: f64, n: &[f64; 4]| -> [f64; 4] { std::array::from_fn(|k| mean[k] + t * (n[k] - mean[k])) };
        let mut theta: f64 = 1.0;
        for n in &nodes {
            if n[0] < rho_min {
                theta = theta.min((mean[0] - rho_min) / (mean[0] - n[0]));
            }
        }
        let ok = |v: &[f64; 4]| v[0] > 0.0 && fl.pressure(v).is_ok_and(|p| p >= p_min);
        for n in &nodes {
            if ok(&at(theta, n)) {
                continue;
            }
            // the admissible set is convex and contains the mean
            let (mut lo, mut hi) = (0.0, theta);
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if ok(&at(mid, n)) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            theta = lo;
        }
        Ok(theta)
    }
}

impl Limiter for PositivityLimiter {
    fn apply(&self, op: &Operator, q: &mut DgField) -> Result<usize> {
        let sub = Subdomain::Fluid;
        let b = q.block(sub);
        let (nv, nm) = (b.nvars, op.basis.nmodes);
        if nm == 1 || b.ncells == 0 {
            return Ok(0);
        }
        let mesh = &op.mesh;
        let mut thetas = vec![1.0; b.ncells];
        for_each_chunk(op.options.exec, &mut thetas, 1, |c, out| {
            let cell = &mesh.cells[mesh.global_index(sub, c)];
            let coef = b.cell(c);
            let mean: [f64; 4] = std::array::from_fn(|k| coef[k] / cell.area().sqrt());
            out[0] = self.theta(op, coef, nv, Basis::scale(cell), &mean).unwrap_or(f64::NAN);
        });
        if let Some(c) = thetas.iter().position(|t| t.is_nan()) {
            let cell = &mesh.cells[mesh.global_index(sub, c)];
            let mean: Vec<f64> = (0..4).map(|k| b.get(c, 0, k) / cell.area().sqrt()).collect();
            let source = op.params.fluid.admissible_primitive(&mean).err().unwrap_or(AdmissibilityError::NonFinite);
            return Err(Error::CellAdmissibility {
                cell: mesh.global_index(sub, c),
                node: 0,
                source,
            });
        }
        let bm = q.block_mut(sub);
        let mut count = 0;
        for (c, &t) in thetas.iter().enumerate() {
            if t >= 1.0 {
                continue;
            }
            count += 1;
            let coef = bm.cell_mut(c);
            for j in 1..nm {
                for k in 0..4 {
                    coef[j * nv + k] *= t;
                }
            }
        }
        Ok(count)
    }
}

/// Applies its limiters in order.
pub struct Chain(pub Vec<Box<dyn Limiter>>);

impl Limiter for Chain {
    fn apply(&self, op: &Operator, q: &mut DgField) -> Result<usize> {
        let mut n = 0;
        for l in &self.0 {
            n += l.apply(op, q)?;
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::FsiParams;
    use crate::dg::OperatorOptions;
    use crate::mesh::{Mesh, Periodicity, Rect};
    use crate::physics::{ElasticParams, FluidParams};

    fn line(nx: usize, p: usize) -> Operator {
        let mesh = Mesh::single(
            Subdomain::Fluid,
            Rect::new(0.0, nx as f64, 0.0, 1.0),
            nx,
            1,
            Periodicity { x: false, y: true },
        )
        .unwrap();
        let params = FsiParams {
            solid: ElasticParams::new(1.0, 2.0, 1.0).unwrap(),
            fluid: FluidParams::new(1.4, 0.0).unwrap(),
        };
        Operator::new(mesh, Basis::new(p, p + 2).unwrap(), params, OperatorOptions::default())
    }

    #[test]
    fn minmod_cases() {
        assert_eq!(minmod(1.0, 2.0, 3.0), 1.0);
        assert_eq!(minmod(-1.0, -2.0, -0.5), -0.5);
        assert_eq!(minmod(1.0, -2.0, 3.0), 0.0);
        assert_eq!(minmod_tvb(1.0, -2.0, 3.0, 1.0), 1.0);
    }

    #[test]
    fn constant_and_smooth_fields_are_untouched() {
        let op = line(4, 3);
        let q = op.project([5, 4], |_, _, o| o.copy_from_slice(&[1.0, 0.5, 0.0, 3.0]));
        let mut r = q.clone();
        assert_eq!(TvbLimiter { m: 0.0 }.apply(&op, &mut r).unwrap(), 0);
        assert_eq!(r, q);
        let q = op.project([5, 4], |_, x, o| o.copy_from_slice(&[1.0 + 0.01 * x[0] * x[0], 0.0, 0.0, 3.0]));
        let mut r = q.clone();
        assert_eq!(TvbLimiter { m: 50.0 }.apply(&op, &mut r).unwrap(), 0);
        assert_eq!(r, q);
    }

    #[test]
    fn step_profile_gets_minmod_slope() {
        // three cells of width 1 with means 0, then a linear ramp, then 1
        let op = line(3, 2);
        let q = op.project([5, 4], |_, x, o| {
            let v = if x[0] < 1.0 {
                1.0
            } else if x[0] < 2.0 {
                1.0 + 2.0 * (x[0] - 1.0)
            } else {
                2.5
            };
            o.copy_from_slice(&[v, 0.0, 0.0, 1.0]);
        });
        let mut r = q.clone();
        let n = TvbLimiter { m: 0.0 }.apply(&op, &mut r).unwrap();
        assert!(n >= 1);
        for c in 0..3 {
            assert_eq!(r.blocks[1].get(c, 0, 0), q.blocks[1].get(c, 0, 0));
        }
        // middle cell: mean 2, face deviation 1, neighbor jumps 1 and 0.5 -> slope 0.5
        let cell = &op.mesh.cells[op.mesh.global_index(Subdomain::Fluid, 1)];
        let mut u = [0.0; 4];
        op.basis.evaluate(cell, r.blocks[1].cell(1), 4, [1.0, 0.0], &mut u);
        assert!((u[0] - 2.5).abs() < 1e-14, "{}", u[0]);
        op.basis.evaluate(cell, r.blocks[1].cell(1), 4, [-1.0, 0.3], &mut u);
        assert!((u[0] - 1.5).abs() < 1e-14);
    }

    fn node_states(op: &Operator, q: &DgField, c: usize) -> Vec<[f64; 4]> {
        let b = q.block(Subdomain::Fluid);
        let cell = &op.mesh.cells[op.mesh.global_index(Subdomain::Fluid, c)];
        let nm = op.basis.nmodes;
        let mut u = [0.0; 4];
        let tables = std::iter::once(&op.basis.vol_values).chain(op.basis.face_values.iter());
        tables
            .flat_map(|t| t.chunks_exact(nm))
            .map(|phi| {
                combine(phi, Basis::scale(cell), b.cell(c), 4, &mut u);
                u
            })
            .collect()
    }

    #[test]
    fn positivity_scaling_keeps_means_and_floors() {
        let op = line(3, 3);
        let fl = op.params.fluid;
        // a sharp density and pressure jump inside the middle cell
        let q = op.project([5, 4], |_, x, o| {
            let (rho, p) = if x[0] < 1.6 { (50.0, 40.0) } else { (1.0, 0.5) };
            o.copy_from_slice(&fl.conserved(rho, [0.3, 0.0], p));
        });
        assert!(node_states(&op, &q, 1).iter().any(|u| u[0] <= 0.0 || fl.pressure(u).map_or(true, |p| p <= 0.0)));
        let mut r = q.clone();
        let lim = PositivityLimiter { eps: 0.1 };
        assert_eq!(lim.apply(&op, &mut r).unwrap(), 1);
        for k in 0..4 {
            assert_eq!(r.blocks[1].get(1, 0, k), q.blocks[1].get(1, 0, k));
        }
        let cell = &op.mesh.cells[op.mesh.global_index(Subdomain::Fluid, 1)];
        let mean: Vec<f64> = (0..4).map(|k| q.blocks[1].get(1, 0, k) / cell.area().sqrt()).collect();
        let pbar = fl.pressure(&mean).unwrap();
        for u in node_states(&op, &r, 1) {
            assert!(u[0] >= 0.1 * mean[0] * (1.0 - 1e-12));
            assert!(fl.pressure(&u).unwrap() >= 0.1 * pbar * (1.0 - 1e-9));
        }
        // admissible cells are left alone, and a second pass changes nothing
        let mut again = r.clone();
        lim.apply(&op, &mut again).unwrap();
        assert_eq!(r.blocks[1].cell(0), q.blocks[1].cell(0));
        assert!(again.max_abs_diff(&r, [5, 4]) <= 1e-12 * 50.0);
    }
}
