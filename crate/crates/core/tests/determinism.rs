mod common;

use coupled_dg::driver::Simulation;

fn run(text: &str, parallel: bool, steps: usize) -> Simulation {
    let text = text.replace("[scheme]\n", &format!("[scheme]\nparallel = {parallel}\n"));
    let mut sim = Simulation::from_toml(&text).unwrap();
    sim.config.run.max_steps = Some(steps);
    sim.run_with(|_, _| Ok(())).unwrap();
    sim
}

fn assert_bitwise(a: &Simulation, b: &Simulation) {
    assert_eq!(a.steps, b.steps);
    assert_eq!(a.time.to_bits(), b.time.to_bits());
    for (x, y) in a.q.blocks.iter().zip(&b.q.blocks) {
        assert_eq!(x.data.len(), y.data.len());
        assert!(x.data.iter().zip(&y.data).all(|(u, v)| u.to_bits() == v.to_bits()));
    }
}

#[test]
fn sequential_and_parallel_runs_are_bitwise_identical() {
    let text = common::cavitation_config(12, 1.2e-4);
    assert_bitwise(&run(&text, false, 20), &run(&text, true, 20));
}

#[test]
fn relaxed_runs_are_bitwise_identical() {
    let text = include_str!("../../../configs/relaxed.toml").replace("output_dir = \"out/relaxed\"\n", "");
    assert_bitwise(&run(&text, false, 10), &run(&text, true, 10));
}

#[test]
fn repeated_runs_agree() {
    let text = common::cavitation_config(12, 1.2e-4);
    assert_bitwise(&run(&text, true, 15), &run(&text, true, 15));
}
