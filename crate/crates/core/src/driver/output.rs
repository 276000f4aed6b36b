//! Snapshot and diagnostics files.

use super::run::StepInfo;
use crate::dg::{BlockKind, DgField, Operator};
use crate::error::Result;
use crate::mesh::Subdomain;
use crate::physics::{ElasticParams, FluidParams, Model};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

fn sub_name(sub: Subdomain) -> &'static str {
    match sub {
        Subdomain::Solid => "solid",
        Subdomain::Fluid => "fluid",
    }
}

fn physical_names(sub: Subdomain) -> &'static [&'static str] {
    match sub {
        Subdomain::Solid => ElasticParams::NAMES,
        Subdomain::Fluid => FluidParams::NAMES,
    }
}

/// Column names of the totals in the diagnostics log.
pub fn total_columns(op: &Operator) -> Vec<String> {
    let mut out = Vec::new();
    for sub in Subdomain::ALL {
        if op.mesh.count(sub) > 0 {
            out.extend(physical_names(sub).iter().map(|n| format!("total_{}_{n}", sub_name(sub))));
        }
    }
    out
}

/// Path of snapshot `index` of `sub` in `dir`.
pub fn snapshot_path(dir: &Path, index: usize, sub: Subdomain) -> PathBuf {
    dir.join(format!("snapshot_{index:04}_{}.csv", sub_name(sub)))
}

/// Writes one file per non-empty subdomain, sampling every cell on a
/// uniform `(p+1) x (p+1)` grid including the cell corners.
pub fn write_snapshot(dir: &Path, index: usize, time: f64, op: &Operator, q: &DgField) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut paths = Vec::new();
    let p = op.basis.p;
    for sub in Subdomain::ALL {
        let Some(grid) = op.mesh.grid(sub) else { continue };
        if grid.is_empty() {
            continue;
        }
        let b = q.block(sub);
        let nphys = BlockKind::of(sub, b.nvars)?.physical_vars();
        let path = snapshot_path(dir, index, sub);
        let mut w = BufWriter::new(File::create(&path)?);
        writeln!(w, "# time: {time:.16e}")?;
        writeln!(w, "# subdomain: {}", sub_name(sub))?;
        writeln!(w, "# p: {p}")?;
        writeln!(w, "# cells: {} x {}", grid.nx, grid.ny)?;
        let derived = match sub {
            Subdomain::Solid => "neg_sigma11",
            Subdomain::Fluid => "pressure",
        };
        let names = physical_names(sub);
        writeln!(w, "# variables: {},{derived}", names.join(","))?;
        writeln!(w, "x1,x2,{},{derived}", names.join(","))?;
        let mut u = vec![0.0; b.nvars];
        for c in 0..b.ncells {
            let cell = &op.mesh.cells[op.mesh.global_index(sub, c)];
            for j in 0..=p {
                for i in 0..=p {
                    let r = [-1.0 + 2.0 * i as f64 / p as f64, -1.0 + 2.0 * j as f64 / p as f64];
                    let x = cell.to_physical(r);
                    op.basis.evaluate(cell, b.cell(c), b.nvars, r, &mut u);
                    let d = match sub {
                        Subdomain::Solid => -u[2],
                        Subdomain::Fluid => op.params.fluid.pressure(&u).unwrap_or(f64::NAN),
                    };
                    write!(w, "{:.16e},{:.16e}", x[0], x[1])?;
                    for v in &u[..nphys] {
                        write!(w, ",{v:.16e}")?;
                    }
                    writeln!(w, ",{d:.16e}")?;
                }
            }
        }
        w.flush()?;
        paths.push(path);
    }
    Ok(paths)
}

/// Comma-separated per-step log.
pub struct DiagnosticsWriter {
    w: BufWriter<File>,
}

impl DiagnosticsWriter {
    pub fn create(path: &Path, op: &Operator) -> Result<DiagnosticsWriter> {
        if let Some(d) = path.parent() {
            std::fs::create_dir_all(d)?;
        }
        let mut w = BufWriter::new(File::create(path)?);
        write!(w, "step,t,dt,lambda1,lambda2,max_psi_u_1,max_psi_u_2")?;
        for c in total_columns(op) {
            write!(w, ",{c}")?;
        }
        writeln!(w)?;
        Ok(DiagnosticsWriter { w })
    }

    pub fn row(&mut self, info: &StepInfo) -> Result<()> {
        let w = &mut self.w;
        write!(
            w,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            info.step, info.time, info.dt, info.lambda[0], info.lambda[1], info.max_psi_u[0], info.max_psi_u[1]
        )?;
        for v in info.totals.iter().flatten() {
            write!(w, ",{v:.16e}")?;
        }
        writeln!(w)?;
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        self.w.flush()?;
        Ok(())
    }
}
