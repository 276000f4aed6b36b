mod common;

use coupled_dg::driver::Simulation;

/// Largest imbalance relative to the largest initial total of its subdomain.
fn relative_imbalance(sim: &mut Simulation) -> f64 {
    let s = sim.run().unwrap();
    assert!(s.reached_end);
    let mut worst: f64 = 0.0;
    for i in 0..2 {
        let scale = sim.ledger.initial[i].iter().fold(0.0, |m: f64, v| m.max(v.abs()));
        for v in &s.imbalance[i] {
            worst = worst.max(v.abs() / scale);
        }
    }
    worst
}

#[test]
fn bubble_collapse_conserves_with_boundary_and_interface_fluxes() {
    let mut sim = Simulation::from_toml(&common::cavitation_config(12, 2e-5)).unwrap();
    let r = relative_imbalance(&mut sim);
    assert!(sim.steps > 10);
    assert!(r <= 1e-12, "relative imbalance {r:e}");
}

#[test]
fn relaxed_run_conserves() {
    let text = include_str!("../../../configs/relaxed.toml").replace("output_dir = \"out/relaxed\"\n", "");
    let mut sim = Simulation::from_toml(&text).unwrap();
    let r = relative_imbalance(&mut sim);
    assert!(r <= 1e-12, "relative imbalance {r:e}");
}

#[test]
fn interface_fluxes_are_not_trivially_zero() {
    let mut sim = Simulation::from_toml(&common::cavitation_config(12, 2e-5)).unwrap();
    sim.run().unwrap();
    let l = &sim.ledger;
    assert!(l.interface[0].iter().any(|v| v.abs() > 0.0));
    assert!(l.interface[1][0].abs() > 0.0 || l.interface[1][1].abs() > 0.0);
}
