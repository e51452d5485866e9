//! Sweep front end for the spinbell library: configuration resolution,
//! deterministic parallel grid evaluation, CSV/manifest emission, and the
//! validation harness.
//!
//! Every run writes `<out>/<command>.csv` plus a sibling `manifest.json`
//! that echoes the fully resolved configuration; re-running a command with
//! `--config manifest.json` reproduces the CSV byte for byte, independent
//! of the thread count.

pub mod commands;
pub mod config;
pub mod csv;
pub mod grid;
pub mod validate;

use anyhow::Result;

use config::RunConfig;

/// Build the bounded worker pool for a run. `SPINBELL_THREADS` caps the
/// requested count.
pub fn thread_pool(cfg: &RunConfig) -> Result<rayon::ThreadPool> {
    let mut n = cfg.threads.max(1);
    if let Ok(cap) = std::env::var("SPINBELL_THREADS") {
        if let Ok(cap) = cap.trim().parse::<usize>() {
            n = n.min(cap.max(1));
        }
    }
    Ok(rayon::ThreadPoolBuilder::new().num_threads(n).build()?)
}

/// Run a sweep command in-process and return the CSV text.
pub fn run_command(cfg: &RunConfig) -> Result<String> {
    let pool = thread_pool(cfg)?;
    let table = match cfg.command.as_str() {
        "eigenstates" => commands::eigenstates(cfg, &pool)?,
        "thermal-map" => commands::thermal_map(cfg, &pool)?,
        "thermal-cuts" => commands::thermal_cuts(cfg, &pool)?,
        "alpha-sweep" => commands::alpha_sweep(cfg, &pool)?,
        "disorder" => commands::disorder(cfg, &pool)?,
        "oracle" => commands::oracle(cfg)?,
        other => anyhow::bail!("unknown command {other}"),
    };
    Ok(table.to_csv())
}
