//! Explicit SSP and diagonally implicit IMEX Runge–Kutta steps.
//!
//! The stage loops are generic over the stored vector so that they can be
//! exercised on small ODEs; [`DgStepper`] binds them to the DG operator.

use super::tableau::{ImexPair, Tableau};
use crate::dg::{DgField, Limiter, Operator, RhsReport, Workspace};
use crate::error::{Error, Result};

/// Vector space operations needed by the stage loops.
pub trait StageVector {
    /// `self = base + sum_k c_k x_k`.
    fn set_lincomb(&mut self, base: &Self, terms: &[(f64, &Self)]);
}

impl StageVector for Vec<f64> {
    fn set_lincomb(&mut self, base: &Self, terms: &[(f64, &Self)]) {
        self.copy_from_slice(base);
        for (c, x) in terms {
            for (y, v) in self.iter_mut().zip(x.iter()) {
                *y += c * v;
            }
        }
    }
}

impl StageVector for DgField {
    fn set_lincomb(&mut self, base: &Self, terms: &[(f64, &Self)]) {
        for (i, b) in self.blocks.iter_mut().enumerate() {
            b.data.copy_from_slice(&base.blocks[i].data);
            for (c, x) in terms {
                for (y, v) in b.data.iter_mut().zip(&x.blocks[i].data) {
                    *y += c * v;
                }
            }
        }
    }
}

fn stage_error(stage: usize) -> impl Fn(Error) -> Error {
    move |e| Error::Stage {
        stage: stage + 1,
        source: Box::new(e),
    }
}

/// One explicit Runge–Kutta step `q <- q + dt sum b_nu f(Y_nu)`.
///
/// `limit` is applied to every stage value after the first and to the
/// result; `k` must hold one vector per stage.
pub fn explicit_rk<V, F, L>(tab: &Tableau, q: &mut V, dt: f64, k: &mut [V], y: &mut V, mut f: F, mut limit: L) -> Result<()>
where
    V: StageVector,
    F: FnMut(usize, &V, &mut V) -> Result<()>,
    L: FnMut(&mut V) -> Result<()>,
{
    let s = tab.stages();
    for nu in 0..s {
        if tab.stage_unused(nu) {
            continue;
        }
        let (done, rest) = k.split_at_mut(nu);
        let terms: Vec<(f64, &V)> = (0..nu)
            .filter(|&l| tab.a[nu][l] != 0.0)
            .map(|l| (dt * tab.a[nu][l], &done[l]))
            .collect();
        y.set_lincomb(q, &terms);
        if nu > 0 {
            limit(y).map_err(stage_error(nu))?;
        }
        f(nu, y, &mut rest[0]).map_err(stage_error(nu))?;
    }
    let terms: Vec<(f64, &V)> = (0..s).filter(|&l| tab.b[l] != 0.0).map(|l| (dt * tab.b[l], &k[l])).collect();
    y.set_lincomb(q, &terms);
    std::mem::swap(q, y);
    limit(q).map_err(stage_error(s))?;
    Ok(())
}

/// One IMEX step for `q' = T(q) + R(q)` with a stiff source `R`.
///
/// `relax(nu, h, y, r)` receives the explicit stage value `y = Q*` and must
/// overwrite it with the solution `Q` of `Q = Q* + h R(Q)` and write `R(Q)`
/// into `r` (`h = a_{nu,nu} dt`, possibly zero). `limit` is applied to every
/// stage value after the implicit solve and to the result.
#[allow(clippy::too_many_arguments)]
pub fn imex_rk<V, F, R, L>(
    pair: &ImexPair,
    q: &mut V,
    dt: f64,
    kt: &mut [V],
    kr: &mut [V],
    y: &mut V,
    mut f: F,
    mut relax: R,
    mut limit: L,
) -> Result<()>
where
    V: StageVector,
    F: FnMut(usize, &V, &mut V) -> Result<()>,
    R: FnMut(usize, f64, &mut V, &mut V) -> Result<()>,
    L: FnMut(&mut V) -> Result<()>,
{
    let (ex, im) = (&pair.explicit, &pair.implicit);
    let s = pair.stages();
    for nu in 0..s {
        let skip_t = ex.stage_unused(nu);
        let skip_r = im.stage_unused(nu) && im.a[nu][nu] == 0.0;
        if skip_t && skip_r {
            continue;
        }
        let (dt_done, dt_rest) = kt.split_at_mut(nu);
        let (dr_done, dr_rest) = kr.split_at_mut(nu);
        let mut terms: Vec<(f64, &V)> = Vec::with_capacity(2 * nu);
        for l in 0..nu {
            if ex.a[nu][l] != 0.0 {
                terms.push((dt * ex.a[nu][l], &dt_done[l]));
            }
            if im.a[nu][l] != 0.0 {
                terms.push((dt * im.a[nu][l], &dr_done[l]));
            }
        }
        y.set_lincomb(q, &terms);
        if !skip_r {
            relax(nu, dt * im.a[nu][nu], y, &mut dr_rest[0]).map_err(stage_error(nu))?;
        }
        if nu > 0 {
            limit(y).map_err(stage_error(nu))?;
        }
        if !skip_t {
            f(nu, y, &mut dt_rest[0]).map_err(stage_error(nu))?;
        }
    }
    let mut terms: Vec<(f64, &V)> = Vec::with_capacity(2 * s);
    for l in 0..s {
        if ex.b[l] != 0.0 {
            terms.push((dt * ex.b[l], &kt[l]));
        }
        if im.b[l] != 0.0 {
            terms.push((dt * im.b[l], &kr[l]));
        }
    }
    y.set_lincomb(q, &terms);
    std::mem::swap(q, y);
    limit(q).map_err(stage_error(s))?;
    Ok(())
}

/// Time integration scheme of a [`DgStepper`].
#[derive(Debug, Clone, PartialEq)]
pub enum Scheme {
    /// Explicit SSP scheme for the relaxation-limit system.
    Explicit(Tableau),
    /// IMEX scheme for the relaxation system with relaxation time `epsilon`.
    Imex { pair: ImexPair, epsilon: f64 },
}

/// Flux bookkeeping of one time step.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    /// Time-integrated outward boundary flux per subdomain.
    pub boundary_flux: [Vec<f64>; 2],
    /// Time-integrated outward interface flux per subdomain.
    pub interface_flux: [Vec<f64>; 2],
    /// Largest interface residual over all stages.
    pub max_psi_u: [f64; 2],
    /// Cells modified by the limiter (summed over stages).
    pub limited_cells: usize,
}

/// Stage storage and workspace for repeated DG steps.
pub struct DgStepper {
    pub scheme: Scheme,
    kt: Vec<DgField>,
    kr: Vec<DgField>,
    y: DgField,
    ws: Workspace,
    reports: Vec<Option<RhsReport>>,
}

impl DgStepper {
    pub fn new(op: &Operator, scheme: Scheme, nvars: [usize; 2]) -> Result<DgStepper> {
        let s = match &scheme {
            Scheme::Explicit(t) => t.stages(),
            Scheme::Imex { pair, epsilon } => {
                if !(*epsilon > 0.0) {
                    return Err(Error::Config(format!("relaxation time {epsilon} must be positive")));
                }
                if nvars[1] != 12 {
                    return Err(Error::Config("IMEX stepping needs a relaxed fluid field".into()));
                }
                pair.stages()
            }
        };
        let z = op.zeros(nvars);
        Ok(DgStepper {
            scheme,
            kt: vec![z.clone(); s],
            kr: vec![z.clone(); s],
            y: z,
            ws: op.workspace(nvars),
            reports: vec![None; s],
        })
    }

    /// Advances `q` by `dt` with fixed speeds `lambda` (solid, fluid).
    pub fn step(&mut self, op: &Operator, q: &mut DgField, dt: f64, lambda: [f64; 2], limiter: &dyn Limiter) -> Result<StepReport> {
        let DgStepper {
            scheme,
            kt,
            kr,
            y,
            ws,
            reports,
        } = self;
        reports.iter_mut().for_each(|r| *r = None);
        let mut limited = 0;
        let f = |nu: usize, x: &DgField, out: &mut DgField| -> Result<()> {
            reports[nu] = Some(op.rhs(x, lambda, ws, out)?);
            Ok(())
        };
        let limit = |x: &mut DgField| -> Result<()> {
            limited += limiter.apply(op, x)?;
            Ok(())
        };
        let weights = match scheme {
            Scheme::Explicit(tab) => {
                explicit_rk(tab, q, dt, kt, y, f, limit)?;
                tab.b.clone()
            }
            Scheme::Imex { pair, epsilon } => {
                let eps = *epsilon;
                let relax = |_: usize, h: f64, x: &mut DgField, r: &mut DgField| -> Result<()> {
                    let e = op.equilibrium(x)?;
                    // r = (E - Q*) / (eps + h), Q = Q* + h r
                    r.set_lincomb(&e, &[(-1.0, x)]);
                    r.scale(1.0 / (eps + h));
                    x.axpy(h, r);
                    Ok(())
                };
                imex_rk(pair, q, dt, kt, kr, y, f, relax, limit)?;
                pair.explicit.b.clone()
            }
        };
        let nv = [q.blocks[0].nvars, q.blocks[1].nvars];
        let mut rep = StepReport {
            boundary_flux: [vec![0.0; nv[0]], vec![0.0; nv[1]]],
            interface_flux: [vec![0.0; nv[0]], vec![0.0; nv[1]]],
            max_psi_u: [0.0; 2],
            limited_cells: limited,
        };
        for (nu, r) in self.reports.iter().enumerate() {
            let Some(r) = r else { continue };
            let w = dt * weights[nu];
            for i in 0..2 {
                for (t, v) in rep.boundary_flux[i].iter_mut().zip(&r.boundary_flux[i]) {
                    *t += w * v;
                }
                for (t, v) in rep.interface_flux[i].iter_mut().zip(&r.interface_flux[i]) {
                    *t += w * v;
                }
                rep.max_psi_u[i] = rep.max_psi_u[i].max(r.max_psi_u[i]);
            }
        }
        Ok(rep)
    }
}
