//! Time increment selection.

use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// Stability factor `1 / (d (2p - 1))` of a DG method with `p^2` modes in `d = 2`.
pub fn dg_factor(p: usize) -> f64 {
    1.0 / (2.0 * (2.0 * p as f64 - 1.0))
}

/// `dt = cfl * scale * min_i min_{cells of i} diam / lambda_i`.
///
/// `scale` is `1` for the plain condition and [`dg_factor`] for the
/// polynomial-degree dependent variant. Subdomains without cells or with zero
/// speed do not constrain the step.
pub fn compute_dt(mesh: &Mesh, lambda: [f64; 2], cfl: f64, scale: f64) -> Result<f64> {
    if !(cfl > 0.0 && cfl <= 1.0) {
        return Err(Error::Config(format!("CFL number {cfl} is not in (0, 1]")));
    }
    let mut dt = f64::INFINITY;
    for (i, cell) in mesh.cells.iter().enumerate() {
        let l = lambda[cell.subdomain.index()];
        if !l.is_finite() {
            return Err(Error::Config(format!("wave speed {l} is not finite")));
        }
        if l > 0.0 {
            dt = dt.min(mesh.cell_diameter(i) / l);
        }
    }
    if !dt.is_finite() {
        return Err(Error::Config("all wave speeds vanish; nothing to integrate".into()));
    }
    Ok(cfl * scale * dt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::{Periodicity, Rect, Subdomain};

    #[test]
    fn literal_formula() {
        let side = 0.1 / 2f64.sqrt();
        let m = Mesh::single(Subdomain::Solid, Rect::new(0.0, side, 0.0, side), 1, 1, Periodicity::default()).unwrap();
        let dt = compute_dt(&m, [2.0, 0.0], 0.7, 1.0).unwrap();
        assert!((dt - 0.035).abs() < 1e-15);
        assert!(compute_dt(&m, [0.0, 0.0], 0.7, 1.0).is_err());
        assert!(compute_dt(&m, [2.0, 0.0], 1.5, 1.0).is_err());
    }

    #[test]
    fn elastic_side_dominates() {
        let m = Mesh::build(
            Rect::new(-0.22, 0.0, -0.22, 0.22),
            Rect::new(0.0, 0.11, -0.22, 0.22),
            (4, 8),
            (2, 8),
            false,
        )
        .unwrap();
        let d = m.cell_diameter(0);
        let dt = compute_dt(&m, [2144.0, 300.0], 1.0, 1.0).unwrap();
        assert!((dt - d / 2144.0).abs() < 1e-18);
        assert!((dg_factor(3) - 0.1).abs() < 1e-16);
    }
}
