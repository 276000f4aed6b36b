//! Random interface data for exercising the Riemann solver.
//!
//! Samples are drawn in the normal frame around three material pairings
//! (a nondimensional one, plastic/air and steel/water) and rotated to a
//! random normal. Auxiliary data are consistent, `V^+ = F^n(U^+)`.

use super::guard::admissibility_guard;
use super::{FsiParams, RsResult};
use crate::physics::{ElasticParams, FluidParams, Frame, Model};
use rand::Rng;

/// One set of Riemann solver inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RsSample {
    pub params: FsiParams,
    pub um: [f64; 5],
    pub up: [f64; 4],
    pub vp: [f64; 4],
    pub lambda: f64,
    pub n: [f64; 2],
}

/// Reference material pairings with a reference fluid density and pressure.
pub fn material_sets() -> [(FsiParams, f64, f64); 3] {
    [
        (
            FsiParams {
                solid: ElasticParams::new(1.0, 2.0, 1.0).unwrap(),
                fluid: FluidParams::new(1.4, 0.0).unwrap(),
            },
            1.0,
            1.0,
        ),
        (
            FsiParams {
                solid: ElasticParams::from_lame(1226.0, 1.4093e9, 1.4093e9).unwrap(),
                fluid: FluidParams::new(1.4, 0.0).unwrap(),
            },
            237.79,
            2e7,
        ),
        (
            FsiParams {
                solid: ElasticParams::new(7850.0, 5900.0, 3200.0).unwrap(),
                fluid: FluidParams::new(4.4, 6e8).unwrap(),
            },
            1000.0,
            1e5,
        ),
    ]
}

/// Draws one sample (not necessarily satisfying the admissibility bounds).
pub fn random_sample<R: Rng>(rng: &mut R) -> RsSample {
    let sets = material_sets();
    let (params, rho0, p0) = sets[rng.random_range(0..sets.len())];
    let fl = params.fluid;
    let rho = rho0 * rng.random_range(0.3..3.0);
    let p = (p0 + fl.pi) * rng.random_range(0.2..3.0) - fl.pi;
    let c = fl.sound_speed(rho, p);
    let v = [c * rng.random_range(-0.5..0.5), c * rng.random_range(-0.5..0.5)];
    let up_c = fl.conserved(rho, v, p);
    let s0 = p0 + fl.pi;
    let um_c = [
        c * rng.random_range(-0.5..0.5),
        c * rng.random_range(-1.0..1.0),
        -p + rho * c * c * rng.random_range(-0.5..0.5),
        s0 * rng.random_range(-1.0..1.0),
        s0 * rng.random_range(-1.0..1.0),
    ];
    let mut vp_c = [0.0; 4];
    fl.flux(&up_c, 0, &mut vp_c).expect("sampled fluid state is admissible");
    let lambda = (v[0].abs() + c) * rng.random_range(1.0..2.0);
    let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    let n = [th.cos(), th.sin()];
    let mut s = RsSample {
        params,
        um: [0.0; 5],
        up: [0.0; 4],
        vp: [0.0; 4],
        lambda,
        n,
    };
    params.solid.rotate(&um_c, n, Frame::OutOf, &mut s.um);
    fl.rotate(&up_c, n, Frame::OutOf, &mut s.up);
    fl.rotate(&vp_c, n, Frame::OutOf, &mut s.vp);
    s
}

/// Draws samples until `count` of them satisfy every admissibility bound.
/// Returns the accepted samples and the number of rejected draws.
pub fn guarded_samples<R: Rng>(rng: &mut R, count: usize) -> (Vec<RsSample>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut rejected = 0;
    while out.len() < count {
        let s = random_sample(rng);
        match admissibility_guard(&s.um, &s.up, s.lambda, s.n, &s.params) {
            Ok(g) if g.all_hold() => out.push(s),
            _ => rejected += 1,
        }
    }
    (out, rejected)
}

/// Characteristic magnitudes of the coupling data of a sample, laid out as
/// `u_r (5) | u_l (4) | v_l (4)`.
pub fn characteristic_scales(s: &RsSample) -> [f64; 13] {
    let fl = &s.params.fluid;
    let w = fl.primitive(&s.up).expect("sample density is positive");
    let c = fl.sound_speed(w.rho, w.p);
    let sv = c + w.v[0].hypot(w.v[1]) + s.um[0].hypot(s.um[1]) + s.lambda;
    let smax = s.um[2].abs().max(s.um[3].abs()).max(s.um[4].abs());
    let sp = w.p.abs() + fl.pi + w.rho * sv * sv + smax + s.params.solid.impedance() * sv;
    let (rho, e) = (w.rho, s.up[3].abs() + sp);
    [sv, sv, sp, sp, sp, rho, rho * sv, rho * sv, e, rho * sv, sp, sp, e * sv]
}

/// Largest componentwise error `|a - b| / max(|b|, scale)` between two results.
pub fn relative_error(a: &RsResult, b: &RsResult, scales: &[f64; 13]) -> f64 {
    let flat = |r: &RsResult| {
        let mut v = [0.0; 13];
        v[..5].copy_from_slice(&r.u_r);
        v[5..9].copy_from_slice(&r.u_l);
        v[9..].copy_from_slice(&r.v_l);
        v
    };
    let (x, y) = (flat(a), flat(b));
    (0..13)
        .map(|k| (x[k] - y[k]).abs() / y[k].abs().max(scales[k]))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coupling::riemann_solve;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn guarded_samples_are_solvable() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let (samples, _) = guarded_samples(&mut rng, 200);
        for s in &samples {
            let r = riemann_solve(&s.um, &s.up, &s.vp, s.lambda, s.n, &s.params).unwrap();
            assert!(r.u_l[0] > 0.0);
        }
    }

    #[test]
    fn error_metric_is_zero_on_identical_results() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = random_sample(&mut rng);
        let r = RsResult {
            u_r: s.um,
            u_l: s.up,
            v_l: s.vp,
            sigma1: 0.0,
        };
        assert_eq!(relative_error(&r, &r, &characteristic_scales(&s)), 0.0);
    }
}
