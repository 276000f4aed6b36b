//! Right-hand side and full step on the cavitation setup, sequential against
//! parallel loops.

use coupled_dg::driver::Simulation;
use coupled_dg::Execution;
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn setup(nx: usize, exec: Execution) -> Simulation {
    let text = include_str!("../../../configs/cavitation.toml")
        .replace("solid_cells = [24, 48]", &format!("solid_cells = [{nx}, {}]", 2 * nx))
        .replace("fluid_cells = [12, 48]", &format!("fluid_cells = [{}, {}]", nx / 2, 2 * nx))
        .replace("output_dir = \"out/cavitation\"\n", "");
    let mut sim = Simulation::from_toml(&text).unwrap();
    sim.op.options.exec = exec;
    sim
}

fn bench_rhs(c: &mut Criterion) {
    let mut g = c.benchmark_group("rhs");
    g.sample_size(20);
    for nx in [12, 24, 48] {
        for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            let sim = setup(nx, exec);
            let lambda = sim.speeds().unwrap();
            let nvars = [sim.q.blocks[0].nvars, sim.q.blocks[1].nvars];
            let mut ws = sim.op.workspace(nvars);
            let mut out = sim.q.zeros_like();
            g.bench_with_input(BenchmarkId::new(name, nx), &nx, |b, _| {
                b.iter(|| sim.op.rhs(&sim.q, lambda, &mut ws, &mut out).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_step(c: &mut Criterion) {
    let mut g = c.benchmark_group("step");
    g.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        let mut sim = setup(24, exec);
        let q0 = sim.q.clone();
        g.bench_function(name, |b| {
            b.iter(|| {
                sim.q = q0.clone();
                sim.time = 0.0;
                sim.advance(1.0).unwrap()
            })
        });
    }
    g.finish();
}

criterion_group!(benches, bench_rhs, bench_step);
criterion_main!(benches);
