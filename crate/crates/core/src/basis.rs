//! Orthonormal tensor Legendre basis and Gauss–Legendre quadrature.
//!
//! On the reference square `[-1, 1]^2` mode `j = (j1, j2)` is
//! `psi_j = P^_j1(xi) P^_j2(eta) / 2` with `P^_k = sqrt(2k + 1) P_k`, which is
//! orthonormal. On a physical cell with half-widths `(hx, hy)` the basis
//! function is `psi_j / sqrt(hx hy)`, orthonormal in `L^2` of the cell.
//! Modes are ordered lexicographically, `index = j1 * p + j2`.

use crate::error::{Error, Result};
use crate::mesh::{Cell, Side};

/// Legendre polynomial `P_k(x)` and its derivative.
pub fn legendre(k: usize, x: f64) -> (f64, f64) {
    if k == 0 {
        return (1.0, 0.0);
    }
    let (mut p0, mut p1) = (1.0, x);
    for n in 1..k {
        let n = n as f64;
        let p2 = ((2.0 * n + 1.0) * x * p1 - n * p0) / (n + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let kf = k as f64;
    let dp = if (x * x - 1.0).abs() < 1e-300 {
        // P_k'(+-1) = (+-1)^(k-1) k (k+1) / 2
        let s = if x > 0.0 || k % 2 == 1 { 1.0 } else { -1.0 };
        s * kf * (kf + 1.0) / 2.0
    } else {
        kf * (x * p1 - p0) / (x * x - 1.0)
    };
    (p1, dp)
}

/// Normalized Legendre polynomial `sqrt(2k+1) P_k(x)` and its derivative.
pub fn legendre_hat(k: usize, x: f64) -> (f64, f64) {
    let (p, dp) = legendre(k, x);
    let s = ((2 * k + 1) as f64).sqrt();
    (s * p, s * dp)
}

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    /// `n`-point rule, exact for polynomials of degree `2n - 1`.
    pub fn new(n: usize) -> GaussRule {
        assert!(n > 0, "quadrature needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            for _ in 0..100 {
                let (p, dp) = legendre(n, x);
                let dx = p / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, dp) = legendre(n, x);
            // ascending order
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussRule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Modal basis tables on the reference square.
#[derive(Debug, Clone)]
pub struct Basis {
    /// Polynomial parameter: degree `< p` in each direction.
    pub p: usize,
    pub nmodes: usize,
    pub rule: GaussRule,
    /// Tensor-rule node coordinates, node index `a * nq + b`.
    pub vol_points: Vec<[f64; 2]>,
    /// Tensor-rule weights on the reference square.
    pub vol_weights: Vec<f64>,
    /// `psi_j` at the volume nodes, `[node][mode]`.
    pub vol_values: Vec<f64>,
    /// `psi_j` at the face nodes of each side, `[side][q][mode]`.
    pub face_values: [Vec<f64>; 4],
    /// `deriv[a * p + b] = 1/2 * int P^_b P^_a' dxi`.
    pub deriv: Vec<f64>,
}

impl Basis {
    /// Basis with parameter `p` (`p^2` modes) and an `nq`-point Gauss rule.
    pub fn new(p: usize, nq: usize) -> Result<Basis> {
        if p == 0 {
            return Err(Error::Config("polynomial parameter p must be at least 1".into()));
        }
        if nq == 0 {
            return Err(Error::Config("quadrature needs at least one node".into()));
        }
        let rule = GaussRule::new(nq);
        let nmodes = p * p;
        let mut b = Basis {
            p,
            nmodes,
            rule: rule.clone(),
            vol_points: Vec::with_capacity(nq * nq),
            vol_weights: Vec::with_capacity(nq * nq),
            vol_values: Vec::with_capacity(nq * nq * nmodes),
            face_values: Default::default(),
            deriv: vec![0.0; p * p],
        };
        let mut tmp = vec![0.0; nmodes];
        for a in 0..nq {
            for c in 0..nq {
                let r = [rule.nodes[a], rule.nodes[c]];
                b.vol_points.push(r);
                b.vol_weights.push(rule.weights[a] * rule.weights[c]);
                b.eval_reference(r, &mut tmp);
                b.vol_values.extend_from_slice(&tmp);
            }
        }
        for side in Side::ALL {
            let mut v = Vec::with_capacity(nq * nmodes);
            for &s in &rule.nodes {
                b.eval_reference(side.reference_point(s), &mut tmp);
                v.extend_from_slice(&tmp);
            }
            b.face_values[side.index()] = v;
        }
        // the integrand has degree <= 2p - 3, so a p-point rule is exact
        let exact = GaussRule::new(p.max(1));
        for a in 0..p {
            for c in 0..p {
                b.deriv[a * p + c] =
                    0.5 * exact.integrate(|x| legendre_hat(c, x).0 * legendre_hat(a, x).1);
            }
        }
        Ok(b)
    }

    pub fn mode(&self, j1: usize, j2: usize) -> usize {
        j1 * self.p + j2
    }

    pub fn multi_index(&self, m: usize) -> (usize, usize) {
        (m / self.p, m % self.p)
    }

    pub fn nq(&self) -> usize {
        self.rule.len()
    }

    /// Reference basis values `psi_j(r)`.
    pub fn eval_reference(&self, r: [f64; 2], out: &mut [f64]) {
        let p = self.p;
        let mut px = [0.0; 16];
        let mut py = [0.0; 16];
        let (px, py) = if p <= 16 {
            (&mut px[..p], &mut py[..p])
        } else {
            unreachable!("polynomial parameter above 16 is not supported")
        };
        for k in 0..p {
            px[k] = legendre_hat(k, r[0]).0;
            py[k] = legendre_hat(k, r[1]).0;
        }
        for j1 in 0..p {
            for j2 in 0..p {
                out[j1 * p + j2] = 0.5 * px[j1] * py[j2];
            }
        }
    }

    /// Factor turning reference values into physical basis values.
    pub fn scale(cell: &Cell) -> f64 {
        1.0 / (cell.half_widths[0] * cell.half_widths[1]).sqrt()
    }

    /// Physical basis values at `x`; errors if `x` lies outside the cell.
    pub fn eval(&self, cell: &Cell, x: [f64; 2]) -> Result<Vec<f64>> {
        if !cell.contains(x) {
            return Err(Error::Domain(format!("point {x:?} lies outside the cell")));
        }
        let mut out = vec![0.0; self.nmodes];
        self.eval_reference(cell.to_reference(x), &mut out);
        let s = Self::scale(cell);
        out.iter_mut().for_each(|v| *v *= s);
        Ok(out)
    }

    /// Evaluates coefficients `coeffs[mode * nvars + k]` at reference point `r`.
    pub fn evaluate(&self, cell: &Cell, coeffs: &[f64], nvars: usize, r: [f64; 2], out: &mut [f64]) {
        let mut phi = vec![0.0; self.nmodes];
        self.eval_reference(r, &mut phi);
        combine(&phi, Self::scale(cell), coeffs, nvars, out);
    }

    /// L2 projection of `f` onto the cell's basis with the tensor rule.
    /// `f(x, out)` writes the `nvars` values at physical point `x`.
    pub fn project<F>(&self, cell: &Cell, nvars: usize, mut f: F, out: &mut [f64])
    where
        F: FnMut([f64; 2], &mut [f64]),
    {
        out[..self.nmodes * nvars].fill(0.0);
        let mut val = vec![0.0; nvars];
        let s = (cell.half_widths[0] * cell.half_widths[1]).sqrt();
        for (q, &r) in self.vol_points.iter().enumerate() {
            f(cell.to_physical(r), &mut val);
            let w = self.vol_weights[q] * s;
            let phi = &self.vol_values[q * self.nmodes..(q + 1) * self.nmodes];
            for (m, &ph) in phi.iter().enumerate() {
                for k in 0..nvars {
                    out[m * nvars + k] += w * ph * val[k];
                }
            }
        }
    }

    /// Max deviation of the quadrature Gram matrix from the identity.
    pub fn gram_error(&self) -> f64 {
        let n = self.nmodes;
        let mut err: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let g: f64 = (0..self.vol_points.len())
                    .map(|q| self.vol_weights[q] * self.vol_values[q * n + i] * self.vol_values[q * n + j])
                    .sum();
                let e = if i == j { g - 1.0 } else { g };
                err = err.max(e.abs());
            }
        }
        err
    }
}

/// `out[k] = scale * sum_m phi[m] coeffs[m * nvars + k]`.
#[inline]
pub fn combine(phi: &[f64], scale: f64, coeffs: &[f64], nvars: usize, out: &mut [f64]) {
    out[..nvars].fill(0.0);
    for (m, &ph) in phi.iter().enumerate() {
        let c = &coeffs[m * nvars..(m + 1) * nvars];
        for k in 0..nvars {
            out[k] += ph * c[k];
        }
    }
    out[..nvars].iter_mut().for_each(|v| *v *= scale);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::Subdomain;

    fn cell(x0: f64, x1: f64, y0: f64, y1: f64) -> Cell {
        Cell {
            center: [0.5 * (x0 + x1), 0.5 * (y0 + y1)],
            half_widths: [0.5 * (x1 - x0), 0.5 * (y1 - y0)],
            subdomain: Subdomain::Fluid,
            local: 0,
            faces: [0; 4],
        }
    }

    #[test]
    fn five_point_rule_is_exact_to_degree_nine() {
        let r = GaussRule::new(5);
        assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-15);
        for k in 0..=9 {
            let exact = if k % 2 == 1 { 0.0 } else { 2.0 / (k as f64 + 1.0) };
            assert!((r.integrate(|x| x.powi(k)) - exact).abs() < 1e-14, "degree {k}");
        }
        assert!((r.integrate(|x| x.powi(10)) - 2.0 / 11.0).abs() > 1e-6);
        assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn legendre_derivatives_match_finite_differences() {
        for k in 0..7 {
            for &x in &[-1.0f64, -0.3, 0.0, 0.71, 1.0] {
                let h = 1e-6;
                let xl = (x - h).max(-1.0);
                let xr = (x + h).min(1.0);
                let fd = (legendre(k, xr).0 - legendre(k, xl).0) / (xr - xl);
                assert!((legendre(k, x).1 - fd).abs() < 1e-5 * (1.0 + fd.abs()), "k={k} x={x}");
            }
        }
    }

    #[test]
    fn constant_mode_values() {
        let b = Basis::new(3, 5).unwrap();
        let unit = cell(0.0, 1.0, 0.0, 1.0);
        for x in [[0.1, 0.2], [0.5, 0.5], [1.0, 0.0]] {
            assert!((b.eval(&unit, x).unwrap()[0] - 1.0).abs() < 1e-15);
        }
        assert!(b.eval(&unit, [0.5, 0.5]).unwrap()[b.mode(1, 0)].abs() < 1e-15);
        let wide = cell(0.0, 2.0, 0.0, 1.0);
        assert!((b.eval(&wide, [1.5, 0.5]).unwrap()[0] - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(matches!(b.eval(&unit, [1.5, 0.5]), Err(Error::Domain(_))));
    }

    #[test]
    fn gram_matrix_is_identity() {
        for p in 1..=5 {
            let b = Basis::new(p, 5).unwrap();
            assert_eq!(b.nmodes, p * p);
            assert!(b.gram_error() < 1e-13, "p={p}");
        }
    }

    #[test]
    fn projection_of_constant_and_polynomials() {
        let b = Basis::new(3, 5).unwrap();
        let c = cell(0.2, 0.7, -0.1, 0.4);
        let mut coef = vec![0.0; 9];
        b.project(&c, 1, |_, o| o[0] = 3.5, &mut coef);
        assert!((coef[0] - 3.5 * c.area().sqrt()).abs() < 1e-14);
        assert!(coef[1..].iter().all(|v| v.abs() < 1e-14));

        // a quadratic in each direction lies in the space
        let f = |x: [f64; 2]| 1.0 + x[0] - 2.0 * x[1] * x[1] + 3.0 * x[0] * x[0] * x[1];
        b.project(&c, 1, |x, o| o[0] = f(x), &mut coef);
        let mut v = [0.0];
        for &r in &b.vol_points {
            b.evaluate(&c, &coef, 1, r, &mut v);
            assert!((v[0] - f(c.to_physical(r))).abs() < 1e-13);
        }
    }

    #[test]
    fn projection_of_degree_eight_monomial() {
        let b = Basis::new(1, 5).unwrap();
        let c = cell(-1.0, 1.0, -1.0, 1.0);
        let mut coef = vec![0.0; 1];
        b.project(&c, 1, |x, o| o[0] = x[0].powi(8), &mut coef);
        // int x^8 dx = 2/9, int 1 dy = 2, phi_00 = 1/2
        let exact = 0.5 * (2.0 / 9.0) * 2.0;
        assert!((coef[0] - exact).abs() < 1e-15);
    }

    #[test]
    fn derivative_matrix_matches_quadrature() {
        let b = Basis::new(4, 5).unwrap();
        let r = GaussRule::new(10);
        for a in 0..4 {
            for c in 0..4 {
                let d = 0.5 * r.integrate(|x| legendre_hat(c, x).0 * legendre_hat(a, x).1);
                assert!((b.deriv[a * 4 + c] - d).abs() < 1e-13);
            }
        }
    }
}
