//! Butcher tableaux of the explicit SSP schemes and the IMEX pairs.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

/// Runge–Kutta tableau `(A, b)`; `c` is the vector of row sums.
#[derive(Debug, Clone, PartialEq)]
pub struct Tableau {
    pub a: Vec<Vec<f64>>,
    pub b: Vec<f64>,
}

impl Tableau {
    pub fn new(a: Vec<Vec<f64>>, b: Vec<f64>) -> Result<Tableau> {
        let s = b.len();
        if s == 0 || a.len() != s || a.iter().any(|r| r.len() != s) {
            return Err(Error::Config("tableau dimensions do not match".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row[i + 1..].iter().any(|v| *v != 0.0) {
                return Err(Error::Config("tableau is not lower triangular".into()));
            }
        }
        Ok(Tableau { a, b })
    }

    pub fn stages(&self) -> usize {
        self.b.len()
    }

    pub fn c(&self) -> Vec<f64> {
        self.a.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn is_explicit(&self) -> bool {
        (0..self.stages()).all(|i| self.a[i][i] == 0.0)
    }

    /// Stage `nu` contributes to no later stage and not to the update.
    pub fn stage_unused(&self, nu: usize) -> bool {
        self.b[nu] == 0.0 && (nu + 1..self.stages()).all(|m| self.a[m][nu] == 0.0)
    }

    /// Largest residual of the classical order conditions up to `order` (at most 3).
    pub fn order_residual(&self, order: usize) -> f64 {
        let s = self.stages();
        let c = self.c();
        let b = &self.b;
        let mut r: f64 = 0.0;
        if order >= 1 {
            r = r.max((b.iter().sum::<f64>() - 1.0).abs());
        }
        if order >= 2 {
            r = r.max(((0..s).map(|i| b[i] * c[i]).sum::<f64>() - 0.5).abs());
        }
        if order >= 3 {
            r = r.max(((0..s).map(|i| b[i] * c[i] * c[i]).sum::<f64>() - 1.0 / 3.0).abs());
            let bac: f64 = (0..s)
                .map(|i| b[i] * (0..s).map(|j| self.a[i][j] * c[j]).sum::<f64>())
                .sum();
            r = r.max((bac - 1.0 / 6.0).abs());
        }
        r
    }

    /// Radius of absolute monotonicity `R(K)` of an explicit tableau, i.e.
    /// its SSP coefficient; zero for schemes that are not SSP.
    pub fn ssp_coefficient(&self) -> f64 {
        let s = self.stages();
        let mut k = DMatrix::<f64>::zeros(s + 1, s + 1);
        for i in 0..s {
            for j in 0..s {
                k[(i, j)] = self.a[i][j];
            }
            k[(s, i)] = self.b[i];
        }
        let feasible = |r: f64| {
            let m = DMatrix::<f64>::identity(s + 1, s + 1) + &k * r;
            let Some(inv) = m.try_inverse() else { return false };
            let e = DVector::<f64>::from_element(s + 1, 1.0);
            let tol = 1e-14;
            (&k * &inv).iter().all(|v| *v >= -tol) && (&inv * e).iter().all(|v| *v >= -tol)
        };
        if !feasible(1e-8) {
            return 0.0;
        }
        let (mut lo, mut hi) = (1e-8, 1e-8);
        while feasible(hi) && hi < 1e3 {
            lo = hi;
            hi *= 2.0;
        }
        if hi >= 1e3 {
            return f64::INFINITY;
        }
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if feasible(mid) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Explicit SSP scheme of order 1, 2 or 3 (forward Euler, Heun, Shu–Osher).
    pub fn ssp(order: usize) -> Result<Tableau> {
        match order {
            1 => Tableau::new(vec![vec![0.0]], vec![1.0]),
            2 => Tableau::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]], vec![0.5, 0.5]),
            3 => Tableau::new(
                vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.25, 0.25, 0.0]],
                vec![1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
            ),
            _ => Err(Error::Config(format!("no SSP scheme of order {order}"))),
        }
    }
}

/// Diagonally implicit IMEX pair: explicit `(A~, b~)` and implicit `(A, b)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImexPair {
    pub name: &'static str,
    pub explicit: Tableau,
    pub implicit: Tableau,
    /// Order of the explicit SSP part.
    pub order: usize,
}

impl ImexPair {
    /// Second order SSP2(2,2,2) pair with `gamma = 1 - 1/sqrt(2)`.
    pub fn ssp2_222() -> ImexPair {
        let g = 1.0 - 1.0 / 2f64.sqrt();
        ImexPair {
            name: "ssp2-222",
            explicit: Tableau {
                a: vec![vec![0.0, 0.0], vec![1.0, 0.0]],
                b: vec![0.5, 0.5],
            },
            implicit: Tableau {
                a: vec![vec![g, 0.0], vec![1.0 - 2.0 * g, g]],
                b: vec![0.5, 0.5],
            },
            order: 2,
        }
    }

    /// First order unsplit scheme: forward Euler transport, backward Euler source.
    pub fn unsplit() -> ImexPair {
        ImexPair {
            name: "unsplit",
            explicit: Tableau {
                a: vec![vec![0.0, 0.0], vec![1.0, 0.0]],
                b: vec![1.0, 0.0],
            },
            implicit: Tableau {
                a: vec![vec![0.0, 0.0], vec![0.0, 1.0]],
                b: vec![0.0, 1.0],
            },
            order: 1,
        }
    }

    pub fn by_name(name: &str) -> Result<ImexPair> {
        match name {
            "ssp2-222" => Ok(Self::ssp2_222()),
            "unsplit" => Ok(Self::unsplit()),
            _ => Err(Error::Config(format!("unknown IMEX pair '{name}' (expected ssp2-222 or unsplit)"))),
        }
    }

    pub fn stages(&self) -> usize {
        self.explicit.stages()
    }

    /// `b~ = last row of A~` and `b = last row of A`.
    pub fn globally_stiffly_accurate(&self) -> bool {
        let s = self.stages();
        self.explicit.b == self.explicit.a[s - 1] && self.implicit.b == self.implicit.a[s - 1]
    }

    /// Largest residual of the order conditions up to order 2 including the
    /// coupling conditions `sum b~ c = sum b c~ = 1/2`.
    pub fn order_residual(&self, order: usize) -> f64 {
        let mut r = self.explicit.order_residual(order).max(self.implicit.order_residual(order));
        if order >= 2 {
            let (c, ct) = (self.implicit.c(), self.explicit.c());
            let s = self.stages();
            let x: f64 = (0..s).map(|i| self.explicit.b[i] * c[i]).sum();
            let y: f64 = (0..s).map(|i| self.implicit.b[i] * ct[i]).sum();
            r = r.max((x - 0.5).abs()).max((y - 0.5).abs());
        }
        r
    }

    /// Checks that the pair is an SSP-k IMEX scheme with `k = self.order`:
    /// the explicit part is a `k`-th order SSP scheme, the implicit diagonal
    /// is nonzero from the second stage on, and a zero first diagonal entry
    /// requires global stiff accuracy.
    pub fn check_ssp_imex(&self) -> Result<()> {
        let s = self.stages();
        let fail = |m: String| Err(Error::Config(format!("{}: {m}", self.name)));
        if !self.explicit.is_explicit() {
            return fail("explicit tableau has a nonzero diagonal".into());
        }
        if self.explicit.order_residual(self.order) > 1e-14 {
            return fail(format!("explicit tableau is not of order {}", self.order));
        }
        if !(self.explicit.ssp_coefficient() > 0.0) {
            return fail("explicit tableau is not SSP".into());
        }
        for k in 1..s {
            if self.implicit.a[k][k] == 0.0 {
                return fail(format!("implicit diagonal entry {} vanishes", k + 1));
            }
        }
        if self.implicit.a[0][0] == 0.0 && !self.globally_stiffly_accurate() {
            return fail("first implicit diagonal entry vanishes but the pair is not globally stiffly accurate".into());
        }
        Ok(())
    }
}
