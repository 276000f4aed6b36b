use coupled_dg::basis::Basis;
use coupled_dg::coupling::sampling::{characteristic_scales, guarded_samples, relative_error};
use coupled_dg::coupling::{psi_q, riemann_solve, FsiParams, RsResult};
use coupled_dg::dg::{Chain, Limiter, Operator, OperatorOptions, PositivityLimiter, TvbLimiter};
use coupled_dg::mesh::{Mesh, Periodicity, Rect, Subdomain};
use coupled_dg::physics::{ElasticParams, FluidParams, Frame, Model};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rotate_result(r: &RsResult, p: &FsiParams, n: [f64; 2], frame: Frame) -> RsResult {
    let mut out = *r;
    p.solid.rotate(&r.u_r, n, frame, &mut out.u_r);
    p.fluid.rotate(&r.u_l, n, frame, &mut out.u_l);
    p.fluid.rotate(&r.v_l, n, frame, &mut out.v_l);
    out
}

/// Moves data from the frame of `from` to the frame of `to`.
fn reframe<M: Model>(m: &M, u: &[f64], from: [f64; 2], to: [f64; 2], out: &mut [f64]) {
    let mut c = [0.0; 5];
    m.rotate(u, from, Frame::Into, &mut c[..u.len()]);
    m.rotate(&c[..u.len()], to, Frame::OutOf, out);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn riemann_solution_satisfies_the_relaxed_coupling(seed in any::<u64>()) {
        let (s, _) = guarded_samples(&mut ChaCha8Rng::seed_from_u64(seed), 1);
        let s = &s[0];
        let r = riemann_solve(&s.um, &s.up, &s.vp, s.lambda, s.n, &s.params).unwrap();
        let res = psi_q(&r.u_r, &r.u_l, &r.v_l, s.n, &s.params).unwrap();
        let sc = characteristic_scales(s);
        // velocity, stress and the three flux components
        let scale = [sc[0], sc[2], sc[6], sc[10], sc[12]];
        for (x, m) in res.iter().zip(scale) {
            prop_assert!(x.abs() <= 1e-12 * m, "{res:?}");
        }
        prop_assert!(r.u_l[0] > 0.0);
    }

    #[test]
    fn riemann_solver_is_rotation_equivariant(seed in any::<u64>(), angle in 0.0..std::f64::consts::TAU) {
        let (s, _) = guarded_samples(&mut ChaCha8Rng::seed_from_u64(seed), 1);
        let s = &s[0];
        let p = &s.params;
        let n2 = [angle.cos(), angle.sin()];
        let (mut um, mut up, mut vp) = ([0.0; 5], [0.0; 4], [0.0; 4]);
        reframe(&p.solid, &s.um, s.n, n2, &mut um);
        reframe(&p.fluid, &s.up, s.n, n2, &mut up);
        reframe(&p.fluid, &s.vp, s.n, n2, &mut vp);
        let a = riemann_solve(&s.um, &s.up, &s.vp, s.lambda, s.n, p).unwrap();
        let b = riemann_solve(&um, &up, &vp, s.lambda, n2, p).unwrap();
        let a = rotate_result(&a, p, s.n, Frame::Into);
        let b = rotate_result(&b, p, n2, Frame::Into);
        let e = relative_error(&b, &a, &characteristic_scales(s));
        prop_assert!(e <= 1e-12, "error {e:e}");
    }

    #[test]
    fn limiters_keep_means_and_give_admissible_nodes(
        seed in any::<u64>(),
        cells in proptest::collection::vec((0.01f64..10.0, -2.0f64..2.0, -2.0f64..2.0, 0.01f64..10.0), 16),
    ) {
        let params = FsiParams {
            solid: ElasticParams::new(1.0, 2.0, 1.0).unwrap(),
            fluid: FluidParams::new(1.4, 0.0).unwrap(),
        };
        let mesh = Mesh::single(Subdomain::Fluid, Rect::new(0.0, 1.0, 0.0, 1.0), 4, 4, Periodicity { x: true, y: true }).unwrap();
        let op = Operator::new(mesh, Basis::new(3, 5).unwrap(), params, OperatorOptions::default());
        let fl = params.fluid;
        let phase = (seed % 1000) as f64 * 1e-3;
        // piecewise data plus a smooth ripple, discontinuous at the cell interiors
        let mut q = op.project([5, 4], move |_, x, o| {
            let i = ((x[0] + 0.125 + phase * 0.25) * 4.0).floor() as usize % 4;
            let j = ((x[1] + 0.125) * 4.0).floor() as usize % 4;
            let (rho, v1, v2, p) = cells[j * 4 + i];
            let w = 1.0 + 0.5 * (6.0 * x[0] + 4.0 * x[1]).sin();
            o[..4].copy_from_slice(&fl.conserved(rho * w, [v1, v2], p * w));
        });
        let means: Vec<f64> = (0..16).flat_map(|c| (0..4).map(move |k| (c, k))).map(|(c, k)| q.cell_mean(&op.mesh, Subdomain::Fluid, c, k)).collect();
        let chain = Chain(vec![Box::new(TvbLimiter { m: 50.0 }), Box::new(PositivityLimiter::default())]);
        chain.apply(&op, &mut q).unwrap();
        for c in 0..16 {
            for k in 0..4 {
                let (a, b) = (q.cell_mean(&op.mesh, Subdomain::Fluid, c, k), means[c * 4 + k]);
                prop_assert!((a - b).abs() <= 1e-12 * (1.0 + b.abs()));
            }
        }
        // every volume and face node is admissible
        prop_assert!(op.wave_speeds(&q).is_ok());
    }
}
