//! Shared setups for the integration tests.
#![allow(dead_code)]

use coupled_dg::basis::GaussRule;
use coupled_dg::driver::Simulation;

/// Doubly periodic smooth wave on the unit square, `n x n` cells, no limiters.
pub fn wave_config(scenario: &str, p: usize, n: usize, t_end: f64) -> String {
    let sub = if scenario == "elastic-wave" { "solid" } else { "fluid" };
    format!(
        r#"
[mesh]
{sub} = [0.0, 1.0, 0.0, 1.0]
{sub}_cells = [{n}, {n}]
periodic_x = true
periodic_y = true

[solid]
rho = 1.0
c1 = 2.0
c2 = 1.0

[fluid]
gamma = 1.4

[scheme]
p = {p}
limiter = false
positivity = false
cfl = 0.5

[run]
scenario = "{scenario}"
t_end = {t_end}

[wave]
mode = [1, 1]
amplitude = 0.2
"#
    )
}

/// Nondimensional bubble next to a wall: solid `[-1, 0] x [-1, 1]`, gas
/// `[0, 1] x [-1, 1]`, `n x 2n` cells each.
pub fn bubble_config(p: usize, n: usize, extra_scheme: &str, extra: &str) -> String {
    format!(
        r#"
[mesh]
solid = [-1.0, 0.0, -1.0, 1.0]
solid_cells = [{n}, {m}]
fluid = [0.0, 1.0, -1.0, 1.0]
fluid_cells = [{n}, {m}]

[solid]
rho = 1.0
c1 = 2.0
c2 = 1.0

[fluid]
gamma = 1.4

[scheme]
p = {p}
boundary_solid = "absorbing"
{extra_scheme}

[run]
scenario = "cavitation"
t_end = 0.05

[cavitation]
center = [0.4, 0.0]
radius = 0.2
p_outside = 1.0
t_outside = 1.0
p_inside = 0.5
t_inside = 1.0
gas_constant = 1.0

{extra}"#,
        m = 2 * n
    )
}

/// The plastic wall and gas bubble on `nx x 2 nx` solid and `nx/2 x 2 nx` fluid cells.
pub fn cavitation_config(nx: usize, t_end: f64) -> String {
    include_str!("../../../../configs/cavitation.toml")
        .replace("solid_cells = [24, 48]", &format!("solid_cells = [{nx}, {}]", 2 * nx))
        .replace("fluid_cells = [12, 48]", &format!("fluid_cells = [{}, {}]", nx / 2, 2 * nx))
        .replace("t_end = 1.2e-4", &format!("t_end = {t_end:e}"))
        .replace("snapshot_interval = 2e-5\n", "")
        .replace("output_dir = \"out/cavitation\"\n", "")
}

/// L2 norm over both subdomains of the difference between the state and the
/// scenario's exact solution at the current time.
pub fn l2_error(sim: &Simulation) -> f64 {
    let rule = GaussRule::new(8);
    let params = sim.op.params;
    let mut sum = 0.0;
    let mut exact = [0.0; 12];
    for cell in &sim.op.mesh.cells {
        let b = sim.q.block(cell.subdomain);
        let nphys = if b.nvars == 5 { 5 } else { 4 };
        let mut u = vec![0.0; b.nvars];
        for (i, &xi) in rule.nodes.iter().enumerate() {
            for (j, &eta) in rule.nodes.iter().enumerate() {
                let x = cell.to_physical([xi, eta]);
                sim.op.basis.evaluate(cell, b.cell(cell.local), b.nvars, [xi, eta], &mut u);
                sim.scenario.state(&sim.config, &params, cell.subdomain, x, sim.time, &mut exact);
                let w = rule.weights[i] * rule.weights[j] * cell.area() / 4.0;
                sum += w * (0..nphys).map(|k| (u[k] - exact[k]).powi(2)).sum::<f64>();
            }
        }
    }
    sum.sqrt()
}
