use clap::{Parser, Subcommand};
use coupled_dg::basis::Basis;
use coupled_dg::coupling::sweep::rs_sweep;
use coupled_dg::driver::{SimConfig, Simulation};
use coupled_dg::error::Result;
use coupled_dg::time::{ImexPair, Tableau};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(version, about = "DG solver for a compressible gas coupled to an elastic solid")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a simulation.
    Run {
        config: PathBuf,
        /// Override the output directory of the config.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// Validate a config, the time-stepping tableaux and the basis.
    Check { config: PathBuf },
    /// Compare the closed-form interface Riemann solver with the numerical oracle.
    Oracle {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn run(config: PathBuf, output_dir: Option<PathBuf>) -> Result<()> {
    let mut cfg = SimConfig::load(&config)?;
    if output_dir.is_some() {
        cfg.run.output_dir = output_dir;
    }
    let mut sim = Simulation::new(cfg)?;
    let s = sim.run()?;
    println!("steps          {}", s.steps);
    println!("time           {:e}", s.time);
    if !s.reached_end {
        println!("stopped at max_steps before t_end");
    }
    println!("max |Psi_U|    {:e} {:e}", s.max_psi_u[0], s.max_psi_u[1]);
    println!("snapshots      {}", s.snapshots.len());
    for (name, imb) in ["solid", "fluid"].iter().zip(&s.imbalance) {
        if !imb.is_empty() {
            let v: Vec<String> = imb.iter().map(|x| format!("{x:.3e}")).collect();
            println!("{name} balance  {}", v.join(" "));
        }
    }
    Ok(())
}

fn check(config: PathBuf) -> Result<bool> {
    let cfg = SimConfig::load(&config)?;
    let mesh = cfg.build_mesh()?;
    let scenario = coupled_dg::driver::Scenario::parse(&cfg.run.scenario)?;
    scenario.check(&cfg, &mesh)?;
    println!("config         ok ({} cells, {} interface faces)", mesh.cells.len(), mesh.interface_faces.len());
    let mut ok = true;
    for k in 1..=3 {
        let t = Tableau::ssp(k)?;
        let (r, c) = (t.order_residual(k), t.ssp_coefficient());
        let pass = r <= 1e-15 && c > 0.0;
        ok &= pass;
        println!("ssp{k}           order residual {r:.1e}, SSP coefficient {c:.6}{}", if pass { "" } else { "  FAILED" });
    }
    for pair in [ImexPair::ssp2_222(), ImexPair::unsplit()] {
        let r = pair.order_residual(pair.order);
        let status = pair.check_ssp_imex();
        ok &= status.is_ok() && r <= 1e-15;
        println!(
            "{:<14} order residual {r:.1e}, {}",
            pair.name,
            match status {
                Ok(()) => "SSP IMEX conditions hold".to_string(),
                Err(e) => format!("FAILED: {e}"),
            }
        );
    }
    let basis = Basis::new(cfg.scheme.p, cfg.quadrature())?;
    let g = basis.gram_error();
    ok &= g <= 1e-12;
    println!("basis          p = {}, {} Gauss points, Gram error {g:.1e}", basis.p, basis.nq());
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run { config, output_dir } => run(config, output_dir).map(|_| true),
        Command::Check { config } => check(config),
        Command::Oracle { samples, seed } => rs_sweep(seed, samples).map(|r| {
            println!("{r}");
            r.oracle_failures == 0
                && r.max_oracle_error <= 1e-10
                && r.max_idempotency_error <= 1e-12
                && r.max_consistency_error <= 1e-12
                && r.inadmissible == 0
        }),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
