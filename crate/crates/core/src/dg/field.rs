//! Modal coefficient storage.

use crate::basis::Basis;
use crate::error::{Error, Result};
use crate::mesh::{Mesh, Subdomain};

/// Coefficients of one subdomain, laid out `[cell][mode][var]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block {
    pub ncells: usize,
    pub nmodes: usize,
    pub nvars: usize,
    pub data: Vec<f64>,
}

impl Block {
    pub fn zeros(ncells: usize, nmodes: usize, nvars: usize) -> Block {
        Block {
            ncells,
            nmodes,
            nvars,
            data: vec![0.0; ncells * nmodes * nvars],
        }
    }

    /// Coefficients per cell.
    pub fn stride(&self) -> usize {
        self.nmodes * self.nvars
    }

    pub fn cell(&self, c: usize) -> &[f64] {
        let s = self.stride();
        &self.data[c * s..(c + 1) * s]
    }

    pub fn cell_mut(&mut self, c: usize) -> &mut [f64] {
        let s = self.stride();
        &mut self.data[c * s..(c + 1) * s]
    }

    pub fn get(&self, c: usize, mode: usize, var: usize) -> f64 {
        self.data[c * self.stride() + mode * self.nvars + var]
    }
}

/// Coefficients of both subdomains (solid first, fluid second).
#[derive(Debug, Clone, PartialEq)]
pub struct DgField {
    pub blocks: [Block; 2],
}

impl DgField {
    /// Zero field with `nvars[i]` variables on subdomain `i`.
    pub fn zeros(mesh: &Mesh, basis: &Basis, nvars: [usize; 2]) -> DgField {
        DgField {
            blocks: [
                Block::zeros(mesh.count(Subdomain::Solid), basis.nmodes, nvars[0]),
                Block::zeros(mesh.count(Subdomain::Fluid), basis.nmodes, nvars[1]),
            ],
        }
    }

    pub fn zeros_like(&self) -> DgField {
        DgField {
            blocks: [
                Block::zeros(self.blocks[0].ncells, self.blocks[0].nmodes, self.blocks[0].nvars),
                Block::zeros(self.blocks[1].ncells, self.blocks[1].nmodes, self.blocks[1].nvars),
            ],
        }
    }

    pub fn block(&self, sub: Subdomain) -> &Block {
        &self.blocks[sub.index()]
    }

    pub fn block_mut(&mut self, sub: Subdomain) -> &mut Block {
        &mut self.blocks[sub.index()]
    }

    /// `self += a * x`.
    pub fn axpy(&mut self, a: f64, x: &DgField) {
        for (b, xb) in self.blocks.iter_mut().zip(&x.blocks) {
            debug_assert_eq!(b.data.len(), xb.data.len());
            for (y, v) in b.data.iter_mut().zip(&xb.data) {
                *y += a * v;
            }
        }
    }

    /// `self = sum_k c_k x_k`.
    pub fn assign_combination(&mut self, terms: &[(f64, &DgField)]) {
        for (i, b) in self.blocks.iter_mut().enumerate() {
            b.data.fill(0.0);
            for (c, x) in terms {
                if *c == 0.0 {
                    continue;
                }
                for (y, v) in b.data.iter_mut().zip(&x.blocks[i].data) {
                    *y += c * v;
                }
            }
        }
    }

    pub fn scale(&mut self, a: f64) {
        for b in &mut self.blocks {
            b.data.iter_mut().for_each(|v| *v *= a);
        }
    }

    /// Cell average of `var` in the `local`-th cell of `sub`.
    pub fn cell_mean(&self, mesh: &Mesh, sub: Subdomain, local: usize, var: usize) -> f64 {
        let cell = &mesh.cells[mesh.global_index(sub, local)];
        self.block(sub).get(local, 0, var) / cell.area().sqrt()
    }

    /// Domain integrals of the first `nvars` variables of `sub`.
    pub fn totals(&self, mesh: &Mesh, sub: Subdomain, nvars: usize) -> Vec<f64> {
        let b = self.block(sub);
        let mut out = vec![0.0; nvars];
        for c in 0..b.ncells {
            let area = mesh.cells[mesh.global_index(sub, c)].area();
            for (k, o) in out.iter_mut().enumerate() {
                *o += b.get(c, 0, k) * area.sqrt();
            }
        }
        out
    }

    /// Largest absolute coefficient difference over the first `nvars[i]` variables of each block.
    pub fn max_abs_diff(&self, other: &DgField, nvars: [usize; 2]) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            let (a, b) = (&self.blocks[i], &other.blocks[i]);
            for (ca, cb) in a.data.chunks(a.nvars).zip(b.data.chunks(b.nvars)) {
                for k in 0..nvars[i] {
                    m = m.max((ca[k] - cb[k]).abs());
                }
            }
        }
        m
    }

    /// Errors on the first cell holding a non-finite coefficient.
    pub fn check_finite(&self, mesh: &Mesh) -> Result<()> {
        for sub in Subdomain::ALL {
            let b = self.block(sub);
            if b.stride() == 0 {
                continue;
            }
            for (c, chunk) in b.data.chunks(b.stride()).enumerate() {
                if chunk.iter().any(|v| !v.is_finite()) {
                    return Err(Error::NonFinite {
                        cell: mesh.global_index(sub, c),
                    });
                }
            }
        }
        Ok(())
    }
}
