//! Configuration, scenarios, the time loop and file output.

pub mod config;
pub mod output;
pub mod receivers;
pub mod run;
pub mod scenario;

pub use config::SimConfig;
pub use receivers::{Receiver, Signal};
pub use run::{Ledger, RunSummary, Simulation, StepInfo};
pub use scenario::Scenario;
