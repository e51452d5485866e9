//! `spinbell`: many-body Bell correlations in LMG spin chains.
//!
//! Subcommands sweep eigenstates, thermal states, coupling ranges, and
//! disorder ensembles into CSV files with manifests; `validate` runs the
//! full invariant suite and exits nonzero on any failure.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use spinbell_cli::config::{self, Manifest, PartialConfig};
use spinbell_cli::{run_command, validate};

#[derive(Parser)]
#[command(name = "spinbell", version, about = "Bell correlations in collective spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimized correlator for every eigenstate over a field sweep.
    Eigenstates(SweepArgs),
    /// Thermal correlator over the (h, T) plane.
    ThermalMap(SweepArgs),
    /// Fixed-h and fixed-T cuts with the closed-form overlays.
    ThermalCuts(SweepArgs),
    /// Ground-state correlator against the power-law exponent.
    AlphaSweep(SweepArgs),
    /// Quenched disorder ensembles (diagonal and off-diagonal).
    Disorder(SweepArgs),
    /// Closed-form oracle report (no diagonalization).
    Oracle(SweepArgs),
    /// Run every library and front-end invariant; nonzero exit on failure.
    Validate(ValidateArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Particle counts, comma separated.
    #[arg(long = "L", value_delimiter = ',')]
    l: Option<Vec<usize>>,
    /// Anisotropy values, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    gamma: Option<Vec<f64>>,
    #[arg(long)]
    h_min: Option<f64>,
    #[arg(long)]
    h_max: Option<f64>,
    /// Number of h grid points (>= 1).
    #[arg(long)]
    h_steps: Option<usize>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    t_steps: Option<usize>,
    #[arg(long)]
    alpha_min: Option<f64>,
    #[arg(long)]
    alpha_max: Option<f64>,
    #[arg(long)]
    alpha_steps: Option<usize>,
    /// Fixed field of the temperature cut (thermal-cuts).
    #[arg(long)]
    cut_h: Option<f64>,
    /// Fixed temperature of the field cut (thermal-cuts).
    #[arg(long)]
    cut_t: Option<f64>,
    /// Disorder kinds: diagonal, offdiagonal.
    #[arg(long, value_delimiter = ',')]
    kind: Option<Vec<String>>,
    /// Noise distributions: p1 (uniform), p2 (arcsine).
    #[arg(long, value_delimiter = ',')]
    dist: Option<Vec<String>>,
    /// Disorder amplitudes V, comma separated.
    #[arg(long = "V", value_delimiter = ',')]
    v_values: Option<Vec<f64>>,
    /// Ensemble size per grid point.
    #[arg(long)]
    samples: Option<usize>,
    /// Master seed (default 0xB311).
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (capped by SPINBELL_THREADS).
    #[arg(long)]
    threads: Option<usize>,
    /// Output directory.
    #[arg(long)]
    out: Option<String>,
    /// JSON config file or a previous run's manifest; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<String>,
    /// Self-test hook: adds one deliberately failing check.
    #[arg(long, hide = true)]
    inject_failure: bool,
}

impl SweepArgs {
    fn partial(&self) -> PartialConfig {
        PartialConfig {
            l: self.l.clone(),
            gamma: self.gamma.clone(),
            h_min: self.h_min,
            h_max: self.h_max,
            h_steps: self.h_steps,
            t_min: self.t_min,
            t_max: self.t_max,
            t_steps: self.t_steps,
            alpha_min: self.alpha_min,
            alpha_max: self.alpha_max,
            alpha_steps: self.alpha_steps,
            cut_h: self.cut_h,
            cut_t: self.cut_t,
            kind: self.kind.clone(),
            dist: self.dist.clone(),
            v_values: self.v_values.clone(),
            samples: self.samples,
            seed: self.seed,
            threads: self.threads,
            out: self.out.clone(),
        }
    }
}

fn run_sweep(name: &str, args: &SweepArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => Some(config::load_config_file(path)?),
        None => None,
    };
    let cfg = config::resolve(name, args.partial(), file)?;
    let csv = run_command(&cfg)?;
    let dir = PathBuf::from(&cfg.out);
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let csv_path = dir.join(format!("{name}.csv"));
    std::fs::write(&csv_path, &csv).with_context(|| format!("writing {}", csv_path.display()))?;
    let manifest = Manifest::for_run(&cfg);
    let manifest_path = dir.join("manifest.json");
    std::fs::write(&manifest_path, serde_json::to_string_pretty(&manifest)?)
        .with_context(|| format!("writing {}", manifest_path.display()))?;
    eprintln!(
        "wrote {} ({} rows) and {}",
        csv_path.display(),
        csv.lines().count().saturating_sub(1),
        manifest_path.display()
    );
    Ok(())
}

fn run_validate(args: &ValidateArgs) -> Result<i32> {
    let seed = args.seed.unwrap_or(spinbell_core::bell::DEFAULT_SEED);
    let report = validate::run(seed, args.inject_failure)?;
    print!("{}", validate::render(&report));
    if let Some(out) = &args.out {
        let dir = PathBuf::from(out);
        std::fs::create_dir_all(&dir)?;
        let path = dir.join("validate_report.json");
        std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
        eprintln!("wrote {}", path.display());
    }
    Ok(if report.all_pass { 0 } else { 1 })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Eigenstates(a) => {
            run_sweep("eigenstates", a)?;
            0
        }
        Command::ThermalMap(a) => {
            run_sweep("thermal-map", a)?;
            0
        }
        Command::ThermalCuts(a) => {
            run_sweep("thermal-cuts", a)?;
            0
        }
        Command::AlphaSweep(a) => {
            run_sweep("alpha-sweep", a)?;
            0
        }
        Command::Disorder(a) => {
            run_sweep("disorder", a)?;
            0
        }
        Command::Oracle(a) => {
            run_sweep("oracle", a)?;
            0
        }
        Command::Validate(a) => run_validate(a)?,
    };
    std::process::exit(code);
}
