//! Semi-discrete DG operator of the coupled problem.
//!
//! The right-hand side is assembled in three data-parallel passes:
//! projected volume fluxes per cell, numerical fluxes per face (both sides
//! stored in a face buffer), then volume and surface integrals per cell.
//! Every pass writes disjoint chunks, so the sequential and parallel
//! execution paths produce identical results.

use super::field::{Block, DgField};
use super::flux::{boundary_ghost, elastic_absorbing_flux, interface_fluxes, llf, relaxed_flux};
use super::{BoundaryPolicy, InterfaceShear, SpeedMode};
use crate::basis::{combine, Basis};
use crate::coupling::FsiParams;
use crate::error::{AdmissibilityError, Error, Result};
use crate::exec::{for_each_chunk, try_for_each_chunk, Execution};
use crate::mesh::{FaceKind, Mesh, Side, Subdomain};
use crate::physics::{Model, MAX_VARS};

/// Layout of a coefficient block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    /// Elastic state `(w1, w2, s11, s12, s22)`.
    Solid,
    /// Euler state `(rho, rho v1, rho v2, rho E)`.
    Fluid,
    /// Relaxed Euler state `(U, V^1, V^2)`.
    RelaxedFluid,
}

impl BlockKind {
    pub fn of(sub: Subdomain, nvars: usize) -> Result<BlockKind> {
        match (sub, nvars) {
            (Subdomain::Solid, 5) => Ok(BlockKind::Solid),
            (Subdomain::Fluid, 4) => Ok(BlockKind::Fluid),
            (Subdomain::Fluid, 12) => Ok(BlockKind::RelaxedFluid),
            _ => Err(Error::Config(format!("{nvars} variables do not fit subdomain {sub:?}"))),
        }
    }

    /// Number of physical (conserved) variables.
    pub fn physical_vars(self) -> usize {
        match self {
            BlockKind::Solid => 5,
            _ => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorOptions {
    pub boundary: [BoundaryPolicy; 2],
    pub speed_mode: SpeedMode,
    pub interface_shear: InterfaceShear,
    pub exec: Execution,
}

impl Default for OperatorOptions {
    fn default() -> Self {
        OperatorOptions {
            boundary: [BoundaryPolicy::Outflow; 2],
            speed_mode: SpeedMode::Local,
            interface_shear: InterfaceShear::default(),
            exec: Execution::default(),
        }
    }
}

/// Flux integrals gathered while assembling a right-hand side.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsReport {
    /// Outward flux integrated over the outer boundary of each subdomain.
    pub boundary_flux: [Vec<f64>; 2],
    /// Outward flux integrated over the interface, seen from each subdomain.
    pub interface_flux: [Vec<f64>; 2],
    /// Largest `|w.n - v.n|` and `|sigma_nn + p|` over interface quadrature points.
    pub max_psi_u: [f64; 2],
}

/// Scratch buffers reused between right-hand side evaluations.
#[derive(Debug, Clone)]
pub struct Workspace {
    nvars: [usize; 2],
    /// Projected `F^1, F^2` coefficients per cell.
    flux: [Vec<f64>; 2],
    faces: Vec<f64>,
    face_stride: usize,
    nv: usize,
}

pub struct Operator {
    pub mesh: Mesh,
    pub basis: Basis,
    pub params: FsiParams,
    pub options: OperatorOptions,
    /// Reference traces for absorbing boundaries, `(face, point, var)` with 5 vars.
    boundary_reference: Option<Vec<f64>>,
}

impl Operator {
    pub fn new(mesh: Mesh, basis: Basis, params: FsiParams, options: OperatorOptions) -> Operator {
        Operator {
            mesh,
            basis,
            params,
            options,
            boundary_reference: None,
        }
    }

    /// Stores the boundary traces of `q` as the reference states of absorbing boundaries.
    pub fn set_boundary_reference(&mut self, q: &DgField) {
        let nq = self.basis.nq();
        let mut r = vec![0.0; self.mesh.faces.len() * nq * 5];
        let mut u = [0.0; MAX_VARS];
        let nm = self.basis.nmodes;
        for (fi, face) in self.mesh.faces.iter().enumerate() {
            if face.kind != FaceKind::Boundary {
                continue;
            }
            let c = &self.mesh.cells[face.left];
            let b = q.block(c.subdomain);
            for k in 0..nq {
                let phi = &self.basis.face_values[face.left_side.index()][k * nm..(k + 1) * nm];
                combine(phi, Basis::scale(c), b.cell(c.local), b.nvars, &mut u);
                r[(fi * nq + k) * 5..(fi * nq + k) * 5 + 5].copy_from_slice(&u[..5]);
            }
        }
        self.boundary_reference = Some(r);
    }

    fn reference(&self, face: usize, k: usize) -> Result<&[f64]> {
        let nq = self.basis.nq();
        match &self.boundary_reference {
            Some(r) => Ok(&r[(face * nq + k) * 5..(face * nq + k) * 5 + 5]),
            None => Err(Error::Config("absorbing boundary without a reference state".into())),
        }
    }

    pub fn zeros(&self, nvars: [usize; 2]) -> DgField {
        DgField::zeros(&self.mesh, &self.basis, nvars)
    }

    /// L2 projection of `f(sub, x, out)` on every cell.
    pub fn project<F>(&self, nvars: [usize; 2], f: F) -> DgField
    where
        F: Fn(Subdomain, [f64; 2], &mut [f64]) + Sync + Send,
    {
        let mut out = self.zeros(nvars);
        for sub in Subdomain::ALL {
            let nv = nvars[sub.index()];
            let b = out.block_mut(sub);
            let stride = b.stride();
            for_each_chunk(self.options.exec, &mut b.data, stride, |local, chunk| {
                let cell = &self.mesh.cells[self.mesh.global_index(sub, local)];
                self.basis.project(cell, nv, |x, o| f(sub, x, o), chunk);
            });
        }
        out
    }

    pub fn workspace(&self, nvars: [usize; 2]) -> Workspace {
        let nm = self.basis.nmodes;
        let nq = self.basis.nq();
        let nv = nvars[0].max(nvars[1]);
        let face_stride = 2 * nq * nv + 2 * nv + 2;
        Workspace {
            nvars,
            flux: [
                vec![0.0; 2 * nm * nvars[0] * self.mesh.count(Subdomain::Solid)],
                vec![0.0; 2 * nm * nvars[1] * self.mesh.count(Subdomain::Fluid)],
            ],
            faces: vec![0.0; face_stride * self.mesh.faces.len()],
            face_stride,
            nv,
        }
    }

    fn kinds(&self, q: &DgField) -> Result<[BlockKind; 2]> {
        Ok([
            BlockKind::of(Subdomain::Solid, q.blocks[0].nvars)?,
            BlockKind::of(Subdomain::Fluid, q.blocks[1].nvars)?,
        ])
    }

    /// Largest wave speed per subdomain: `c1` in the solid, `|v| + c` over
    /// all volume and face quadrature nodes in the fluid.
    pub fn wave_speeds(&self, q: &DgField) -> Result<[f64; 2]> {
        let solid = if self.mesh.count(Subdomain::Solid) > 0 {
            self.params.solid.c1
        } else {
            0.0
        };
        let b = q.block(Subdomain::Fluid);
        let mut per_cell = vec![0.0; b.ncells];
        let nm = self.basis.nmodes;
        let nq = self.basis.nq();
        let fluid = &self.params.fluid;
        try_for_each_chunk(self.options.exec, &mut per_cell, 1, |local, out| {
            let gc = self.mesh.global_index(Subdomain::Fluid, local);
            let cell = &self.mesh.cells[gc];
            let s = Basis::scale(cell);
            let coef = b.cell(local);
            let mut u = [0.0; MAX_VARS];
            let mut m: f64 = 0.0;
            let nvol = self.basis.vol_points.len();
            let mut visit = |node: usize, phi: &[f64]| -> Result<()> {
                combine(phi, s, coef, b.nvars, &mut u);
                let c = fluid
                    .max_wave_speed(&u[..4])
                    .map_err(|source| Error::CellAdmissibility { cell: gc, node, source })?;
                m = m.max(c);
                Ok(())
            };
            for k in 0..nvol {
                visit(k, &self.basis.vol_values[k * nm..(k + 1) * nm])?;
            }
            for side in Side::ALL {
                let fv = &self.basis.face_values[side.index()];
                for k in 0..nq {
                    visit(nvol + side.index() * nq + k, &fv[k * nm..(k + 1) * nm])?;
                }
            }
            out[0] = m;
            Ok::<(), Error>(())
        })?;
        Ok([solid, per_cell.iter().cloned().fold(0.0, f64::max)])
    }

    /// Projection of the Euler fluxes `F^1(U_h), F^2(U_h)` of one fluid cell;
    /// `coef` holds `nvars` variables per mode, of which the first four are `U`.
    fn fluid_flux_projection(&self, local: usize, coef: &[f64], nvars: usize, f1: &mut [f64], f2: &mut [f64], ldf: usize) -> Result<()> {
        let nm = self.basis.nmodes;
        let gc = self.mesh.global_index(Subdomain::Fluid, local);
        let cell = &self.mesh.cells[gc];
        let s = Basis::scale(cell);
        let jac = (cell.half_widths[0] * cell.half_widths[1]).sqrt();
        let mut u = [0.0; MAX_VARS];
        let (mut g1, mut g2) = ([0.0; 4], [0.0; 4]);
        for m in 0..nm {
            f1[m * ldf..m * ldf + 4].fill(0.0);
            f2[m * ldf..m * ldf + 4].fill(0.0);
        }
        for (node, &wq) in self.basis.vol_weights.iter().enumerate() {
            let phi = &self.basis.vol_values[node * nm..(node + 1) * nm];
            combine(phi, s, coef, nvars, &mut u);
            let err = |source| Error::CellAdmissibility { cell: gc, node, source };
            self.params.fluid.flux(&u[..4], 0, &mut g1).map_err(err)?;
            self.params.fluid.flux(&u[..4], 1, &mut g2).map_err(err)?;
            let w = wq * jac;
            for (m, &ph) in phi.iter().enumerate() {
                let a = w * ph;
                for k in 0..4 {
                    f1[m * ldf + k] += a * g1[k];
                    f2[m * ldf + k] += a * g2[k];
                }
            }
        }
        Ok(())
    }

    /// Projected physical flux `Pi F^dir(U_h)` of the conserved part of `block`.
    pub fn flux_projection(&self, q: &DgField, sub: Subdomain, dir: usize) -> Result<Block> {
        let b = q.block(sub);
        let kind = BlockKind::of(sub, b.nvars)?;
        let nv = kind.physical_vars();
        let nm = self.basis.nmodes;
        let mut out = Block::zeros(b.ncells, nm, nv);
        match kind {
            BlockKind::Solid => {
                for c in 0..b.ncells {
                    for m in 0..nm {
                        let src = &b.cell(c)[m * 5..(m + 1) * 5];
                        self.params.solid.apply(src, dir, &mut out.cell_mut(c)[m * 5..(m + 1) * 5]);
                    }
                }
            }
            _ => {
                let mut scratch = vec![0.0; nm * 4];
                for c in 0..b.ncells {
                    let dst = out.cell_mut(c);
                    if dir == 0 {
                        self.fluid_flux_projection(c, b.cell(c), b.nvars, dst, &mut scratch, 4)?;
                    } else {
                        self.fluid_flux_projection(c, b.cell(c), b.nvars, &mut scratch, dst, 4)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Equilibrium projection of a relaxed field: `V^j <- Pi F^j(U)`.
    /// Non-relaxed blocks are copied.
    pub fn equilibrium(&self, q: &DgField) -> Result<DgField> {
        let mut out = q.clone();
        if q.blocks[1].nvars != 12 {
            return Ok(out);
        }
        let nm = self.basis.nmodes;
        let src = &q.blocks[1];
        let b = &mut out.blocks[1];
        let stride = b.stride();
        try_for_each_chunk(self.options.exec, &mut b.data, stride, |local, chunk| {
            let mut f1 = vec![0.0; nm * 4];
            let mut f2 = vec![0.0; nm * 4];
            self.fluid_flux_projection(local, src.cell(local), 12, &mut f1, &mut f2, 4)?;
            for m in 0..nm {
                chunk[m * 12 + 4..m * 12 + 8].copy_from_slice(&f1[m * 4..m * 4 + 4]);
                chunk[m * 12 + 8..m * 12 + 12].copy_from_slice(&f2[m * 4..m * 4 + 4]);
            }
            Ok::<(), Error>(())
        })?;
        Ok(out)
    }

    /// Pass A: projected flux coefficients `[F^1 | F^2]` of every cell.
    fn volume_fluxes(&self, q: &DgField, kinds: [BlockKind; 2], lambda: f64, flux: &mut [Vec<f64>; 2]) -> Result<()> {
        let nm = self.basis.nmodes;
        for sub in Subdomain::ALL {
            let b = q.block(sub);
            let stride = b.stride();
            let kind = kinds[sub.index()];
            let buf = &mut flux[sub.index()];
            try_for_each_chunk(self.options.exec, buf, 2 * stride, |local, chunk| {
                let coef = b.cell(local);
                let (f1, f2) = chunk.split_at_mut(stride);
                match kind {
                    BlockKind::Solid => {
                        for m in 0..nm {
                            let u = &coef[m * 5..(m + 1) * 5];
                            self.params.solid.apply(u, 0, &mut f1[m * 5..(m + 1) * 5]);
                            self.params.solid.apply(u, 1, &mut f2[m * 5..(m + 1) * 5]);
                        }
                        Ok(())
                    }
                    BlockKind::Fluid => self.fluid_flux_projection(local, coef, 4, f1, f2, 4),
                    BlockKind::RelaxedFluid => {
                        let l2 = lambda * lambda;
                        f1.fill(0.0);
                        f2.fill(0.0);
                        for m in 0..nm {
                            let c = &coef[m * 12..(m + 1) * 12];
                            let (a, b) = (&mut f1[m * 12..(m + 1) * 12], &mut f2[m * 12..(m + 1) * 12]);
                            for k in 0..4 {
                                a[k] = c[4 + k];
                                a[4 + k] = l2 * c[k];
                                b[k] = c[8 + k];
                                b[8 + k] = l2 * c[k];
                            }
                        }
                        Ok(())
                    }
                }
            })?;
        }
        Ok(())
    }

    /// State and normal flux traces of `cell` at point `k` of `side`.
    #[inline]
    #[allow(clippy::too_many_arguments)]
    fn trace(&self, q: &DgField, flux: &[Vec<f64>; 2], cell: usize, side: Side, k: usize, n: [f64; 2], uo: &mut [f64], fo: &mut [f64]) {
        let c = &self.mesh.cells[cell];
        let si = c.subdomain.index();
        let b = &q.blocks[si];
        let nm = self.basis.nmodes;
        let stride = b.stride();
        let phi = &self.basis.face_values[side.index()][k * nm..(k + 1) * nm];
        let s = Basis::scale(c);
        combine(phi, s, b.cell(c.local), b.nvars, uo);
        let fc = &flux[si][2 * stride * c.local..2 * stride * (c.local + 1)];
        let (mut f1, mut f2) = ([0.0; MAX_VARS], [0.0; MAX_VARS]);
        combine(phi, s, &fc[..stride], b.nvars, &mut f1);
        combine(phi, s, &fc[stride..], b.nvars, &mut f2);
        for v in 0..b.nvars {
            fo[v] = n[0] * f1[v] + n[1] * f2[v];
        }
    }

    /// Numerical flux between two traces of the same subdomain.
    #[inline]
    #[allow(clippy::too_many_arguments)]
    fn same_side_flux(
        &self,
        kind: BlockKind,
        um: &[f64],
        fm: &[f64],
        up: &[f64],
        fp: &[f64],
        n: [f64; 2],
        lambda: [f64; 2],
        out: &mut [f64],
    ) -> Result<(), AdmissibilityError> {
        match kind {
            BlockKind::Solid => llf(um, up, fm, fp, lambda[0], &mut out[..5]),
            BlockKind::Fluid => {
                let s = match self.options.speed_mode {
                    SpeedMode::Global => lambda[1],
                    SpeedMode::Local => {
                        let f = &self.params.fluid;
                        f.wave_speed(&um[..4], n)?.max(f.wave_speed(&up[..4], n)?)
                    }
                };
                llf(um, up, fm, fp, s, &mut out[..4]);
            }
            BlockKind::RelaxedFluid => relaxed_flux(&um[..4], &up[..4], &fm[..4], &fp[..4], n, lambda[1], &mut out[..12]),
        }
        Ok(())
    }

    /// Pass B kernel: fluxes and flux integrals on one face.
    #[allow(clippy::too_many_arguments)]
    fn face_kernel(
        &self,
        fi: usize,
        q: &DgField,
        flux: &[Vec<f64>; 2],
        kinds: [BlockKind; 2],
        lambda: [f64; 2],
        nv: usize,
        chunk: &mut [f64],
    ) -> Result<()> {
        let face = &self.mesh.faces[fi];
        let nq = self.basis.nq();
        chunk.fill(0.0);
        let (gl, rest) = chunk.split_at_mut(nq * nv);
        let (gr, rest) = rest.split_at_mut(nq * nv);
        let (il, rest) = rest.split_at_mut(nv);
        let (ir, psi) = rest.split_at_mut(nv);
        let n = face.normal;
        let lsub = self.mesh.cells[face.left].subdomain;
        let lkind = kinds[lsub.index()];
        let (mut um, mut fm, mut up, mut fp) = ([0.0; MAX_VARS], [0.0; MAX_VARS], [0.0; MAX_VARS], [0.0; MAX_VARS]);
        let half = 0.5 * face.length;
        for k in 0..nq {
            let w = self.basis.rule.weights[k] * half;
            self.trace(q, flux, face.left, face.left_side, k, n, &mut um, &mut fm);
            let g = &mut gl[k * nv..(k + 1) * nv];
            match face.kind {
                FaceKind::Interior => {
                    let (rc, rs) = face.right.expect("interior face without right cell");
                    self.trace(q, flux, rc, rs, k, n, &mut up, &mut fp);
                    self.same_side_flux(lkind, &um, &fm, &up, &fp, n, lambda, g)
                        .map_err(|source| Error::Face { face: fi, point: k, source })?;
                    for (r, v) in gr[k * nv..(k + 1) * nv].iter_mut().zip(g.iter()) {
                        *r = -v;
                    }
                }
                FaceKind::Boundary => {
                    let policy = self.options.boundary[lsub.index()];
                    match (lkind, policy) {
                        (BlockKind::Solid, BoundaryPolicy::Absorbing) => {
                            elastic_absorbing_flux(&self.params.solid, &um, self.reference(fi, k)?, n, g);
                        }
                        (_, BoundaryPolicy::Absorbing) => {
                            up[..4].copy_from_slice(&self.reference(fi, k)?[..4]);
                            self.params
                                .fluid
                                .normal_flux(&up[..4], n, &mut fp[..4])
                                .map_err(|source| Error::Face { face: fi, point: k, source })?;
                            if lkind == BlockKind::RelaxedFluid {
                                up[4..12].copy_from_slice(&um[4..12]);
                            }
                        }
                        (BlockKind::Solid, _) => boundary_ghost(&self.params.solid, policy, &um, &fm, n, &mut up, &mut fp),
                        _ => {
                            boundary_ghost(&self.params.fluid, policy, &um, &fm, n, &mut up, &mut fp);
                            if lkind == BlockKind::RelaxedFluid {
                                // V-part of the ghost is irrelevant to the flux
                                up[4..12].copy_from_slice(&um[4..12]);
                            }
                        }
                    }
                    if !(lkind == BlockKind::Solid && policy == BoundaryPolicy::Absorbing) {
                        self.same_side_flux(lkind, &um, &fm, &up, &fp, n, lambda, g)
                            .map_err(|source| Error::Face { face: fi, point: k, source })?;
                    }
                    for (i, v) in il.iter_mut().zip(g.iter()) {
                        *i += w * v;
                    }
                }
                FaceKind::Interface => {
                    let (rc, rs) = face.right.expect("interface face without fluid cell");
                    self.trace(q, flux, rc, rs, k, n, &mut up, &mut fp);
                    let fluid = &self.params.fluid;
                    let err = |source| Error::Interface { face: fi, point: k, source };
                    let l2 = lambda[1].max(fluid.wave_speed(&up[..4], n).map_err(err)?);
                    let relaxed = kinds[1] == BlockKind::RelaxedFluid;
                    let gf = &mut gr[k * nv..(k + 1) * nv];
                    let shear = self.options.interface_shear;
                    interface_fluxes(&self.params, &um, &fm, &up, &fp, n, [lambda[0], l2], relaxed, shear, g, gf).map_err(err)?;
                    for (i, v) in il.iter_mut().zip(g.iter()) {
                        *i += w * v;
                    }
                    for (i, v) in ir.iter_mut().zip(gf.iter()) {
                        *i += w * v;
                    }
                    let p = fluid.pressure(&up[..4]).map_err(err)?;
                    let wn = n[0] * um[0] + n[1] * um[1];
                    let vn = (n[0] * up[1] + n[1] * up[2]) / up[0];
                    let snn = n[0] * n[0] * um[2] + 2.0 * n[0] * n[1] * um[3] + n[1] * n[1] * um[4];
                    psi[0] = psi[0].max((wn - vn).abs());
                    psi[1] = psi[1].max((snn + p).abs());
                }
            }
        }
        Ok(())
    }

    /// Transport part of the semi-discrete operator, `M^{-1}(H - C)`.
    ///
    /// `lambda = [solid speed, fluid speed]`; the fluid speed is the global
    /// dissipation speed of the limit scheme and the relaxation speed of a
    /// relaxed field.
    pub fn rhs(&self, q: &DgField, lambda: [f64; 2], ws: &mut Workspace, out: &mut DgField) -> Result<RhsReport> {
        let kinds = self.kinds(q)?;
        let nvars = [q.blocks[0].nvars, q.blocks[1].nvars];
        if ws.nvars != nvars {
            *ws = self.workspace(nvars);
        }
        let Workspace {
            flux,
            faces,
            face_stride,
            nv,
            ..
        } = ws;
        let (fs, nv) = (*face_stride, *nv);
        self.volume_fluxes(q, kinds, lambda[1], flux)?;
        let flux = &*flux;
        try_for_each_chunk(self.options.exec, faces, fs, |fi, chunk| {
            self.face_kernel(fi, q, flux, kinds, lambda, nv, chunk)
        })?;
        let faces = &*faces;
        let nq = self.basis.nq();
        let nm = self.basis.nmodes;
        let p = self.basis.p;
        for sub in Subdomain::ALL {
            let si = sub.index();
            let nvk = nvars[si];
            let b = &mut out.blocks[si];
            debug_assert_eq!(b.nvars, nvk);
            let stride = b.stride();
            for_each_chunk(self.options.exec, &mut b.data, stride, |local, r| {
                let gc = self.mesh.global_index(sub, local);
                let cell = &self.mesh.cells[gc];
                r.fill(0.0);
                let fc = &flux[si][2 * stride * local..2 * stride * (local + 1)];
                let (f1, f2) = fc.split_at(stride);
                let (ihx, ihy) = (1.0 / cell.half_widths[0], 1.0 / cell.half_widths[1]);
                for j1 in 0..p {
                    for j2 in 0..p {
                        let j = j1 * p + j2;
                        for m in 0..p {
                            let d1 = self.basis.deriv[j1 * p + m] * ihx;
                            let d2 = self.basis.deriv[j2 * p + m] * ihy;
                            let s1 = &f1[(m * p + j2) * nvk..(m * p + j2 + 1) * nvk];
                            let s2 = &f2[(j1 * p + m) * nvk..(j1 * p + m + 1) * nvk];
                            let dst = &mut r[j * nvk..(j + 1) * nvk];
                            for v in 0..nvk {
                                dst[v] += d1 * s1[v] + d2 * s2[v];
                            }
                        }
                    }
                }
                let scale = Basis::scale(cell);
                for side in Side::ALL {
                    let fi = cell.faces[side.index()];
                    let face = &self.mesh.faces[fi];
                    let off = if face.left == gc && face.left_side == side { 0 } else { nq * nv };
                    let g = &faces[fi * fs + off..fi * fs + off + nq * nv];
                    let ws = 0.5 * face.length * scale;
                    let fv = &self.basis.face_values[side.index()];
                    for k in 0..nq {
                        let w = self.basis.rule.weights[k] * ws;
                        let phi = &fv[k * nm..(k + 1) * nm];
                        let gk = &g[k * nv..k * nv + nvk];
                        for (j, &ph) in phi.iter().enumerate() {
                            let a = w * ph;
                            let dst = &mut r[j * nvk..(j + 1) * nvk];
                            for v in 0..nvk {
                                dst[v] -= a * gk[v];
                            }
                        }
                    }
                }
            });
        }
        let mut report = RhsReport {
            boundary_flux: [vec![0.0; nvars[0]], vec![0.0; nvars[1]]],
            interface_flux: [vec![0.0; nvars[0]], vec![0.0; nvars[1]]],
            max_psi_u: [0.0; 2],
        };
        for (fi, face) in self.mesh.faces.iter().enumerate() {
            let d = &faces[fi * fs + 2 * nq * nv..(fi + 1) * fs];
            match face.kind {
                FaceKind::Interior => {}
                FaceKind::Boundary => {
                    let si = self.mesh.cells[face.left].subdomain.index();
                    for (t, v) in report.boundary_flux[si].iter_mut().zip(&d[..nv]) {
                        *t += v;
                    }
                }
                FaceKind::Interface => {
                    for (t, v) in report.interface_flux[0].iter_mut().zip(&d[..nv]) {
                        *t += v;
                    }
                    for (t, v) in report.interface_flux[1].iter_mut().zip(&d[nv..2 * nv]) {
                        *t += v;
                    }
                    report.max_psi_u[0] = report.max_psi_u[0].max(d[2 * nv]);
                    report.max_psi_u[1] = report.max_psi_u[1].max(d[2 * nv + 1]);
                }
            }
        }
        Ok(report)
    }
}
