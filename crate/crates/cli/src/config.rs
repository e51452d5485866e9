//! Configuration resolution: CLI flags override an optional key-value JSON
//! config file, which overrides per-command defaults. The resolved
//! configuration is echoed verbatim into the run manifest, and a manifest
//! is itself accepted wherever a config file is.

use std::path::Path;

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

/// Schema version of CSV outputs and manifests.
pub const SCHEMA_VERSION: u32 = 1;

/// Partially specified configuration (flags or file contents).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct PartialConfig {
    pub l: Option<Vec<usize>>,
    pub gamma: Option<Vec<f64>>,
    pub h_min: Option<f64>,
    pub h_max: Option<f64>,
    pub h_steps: Option<usize>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub alpha_min: Option<f64>,
    pub alpha_max: Option<f64>,
    pub alpha_steps: Option<usize>,
    pub cut_h: Option<f64>,
    pub cut_t: Option<f64>,
    pub kind: Option<Vec<String>>,
    pub dist: Option<Vec<String>>,
    pub v_values: Option<Vec<f64>>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub threads: Option<usize>,
    pub out: Option<String>,
}

impl PartialConfig {
    /// Later sources win only where this one is unset.
    pub fn or(self, fallback: PartialConfig) -> PartialConfig {
        PartialConfig {
            l: self.l.or(fallback.l),
            gamma: self.gamma.or(fallback.gamma),
            h_min: self.h_min.or(fallback.h_min),
            h_max: self.h_max.or(fallback.h_max),
            h_steps: self.h_steps.or(fallback.h_steps),
            t_min: self.t_min.or(fallback.t_min),
            t_max: self.t_max.or(fallback.t_max),
            t_steps: self.t_steps.or(fallback.t_steps),
            alpha_min: self.alpha_min.or(fallback.alpha_min),
            alpha_max: self.alpha_max.or(fallback.alpha_max),
            alpha_steps: self.alpha_steps.or(fallback.alpha_steps),
            cut_h: self.cut_h.or(fallback.cut_h),
            cut_t: self.cut_t.or(fallback.cut_t),
            kind: self.kind.or(fallback.kind),
            dist: self.dist.or(fallback.dist),
            v_values: self.v_values.or(fallback.v_values),
            samples: self.samples.or(fallback.samples),
            seed: self.seed.or(fallback.seed),
            threads: self.threads.or(fallback.threads),
            out: self.out.or(fallback.out),
        }
    }
}

/// Fully resolved run configuration; serialized into the manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: String,
    pub l: Vec<usize>,
    pub gamma: Vec<f64>,
    pub h_min: f64,
    pub h_max: f64,
    pub h_steps: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub alpha_steps: usize,
    pub cut_h: f64,
    pub cut_t: f64,
    pub kind: Vec<String>,
    pub dist: Vec<String>,
    pub v_values: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub threads: usize,
    pub out: String,
}

/// The emitted run manifest.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub config: RunConfig,
    pub seed: u64,
    pub schema_version: u32,
    pub tool_version: String,
}

impl Manifest {
    pub fn for_run(cfg: &RunConfig) -> Self {
        Manifest {
            command: cfg.command.clone(),
            config: cfg.clone(),
            seed: cfg.seed,
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Read a config file: either a bare key-value object or a manifest
/// (recognized by its `config` key).
pub fn load_config_file(path: &Path) -> Result<PartialConfig> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config file {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let object = if let Some(inner) = value.get("config") {
        inner.clone()
    } else {
        value
    };
    serde_json::from_value(object).context("config file does not match the expected schema")
}

/// Per-command defaults. Grid defaults follow the figure axes: fields
/// `h` in `[0, 1.5]`, temperatures `T` in `[0, 0.6]`, power-law exponents
/// `alpha` in `[0, 3]` by 0.25, disorder amplitudes `V` in `[0, 1]` by 0.05.
fn defaults(command: &str) -> PartialConfig {
    let base = PartialConfig {
        l: Some(vec![4]),
        gamma: Some(vec![1.0, 0.0, -1.0]),
        h_min: Some(0.0),
        h_max: Some(1.5),
        h_steps: Some(301),
        t_min: Some(0.0),
        t_max: Some(0.6),
        t_steps: Some(61),
        alpha_min: Some(0.0),
        alpha_max: Some(3.0),
        alpha_steps: Some(13),
        cut_h: Some(0.04),
        cut_t: Some(0.025),
        kind: Some(vec!["diagonal".into(), "offdiagonal".into()]),
        dist: Some(vec!["p1".into(), "p2".into()]),
        v_values: Some((0..=20).map(|k| k as f64 * 0.05).collect()),
        samples: Some(100),
        seed: Some(spinbell_core::bell::DEFAULT_SEED),
        threads: Some(1),
        out: Some("out".into()),
    };
    match command {
        "eigenstates" => base,
        "thermal-map" => PartialConfig {
            l: Some(vec![4, 8, 16, 40]),
            h_steps: Some(61),
            t_steps: Some(25),
            ..base
        },
        "thermal-cuts" => PartialConfig {
            l: Some(vec![4, 8, 16, 40]),
            gamma: Some(vec![1.0]),
            t_min: Some(0.01),
            t_steps: Some(60),
            ..base
        },
        // gamma = 0 runs at 1e-3: an infinitesimal anisotropy selects the
        // GHZ combination out of the exactly degenerate gamma = 0 doublet
        "alpha-sweep" => PartialConfig {
            l: Some(vec![8]),
            gamma: Some(vec![1.0, 1e-3, -1.0]),
            ..base
        },
        "disorder" => PartialConfig {
            l: Some(vec![8]),
            gamma: Some(vec![1.0, 1e-3, -1.0]),
            ..base
        },
        "oracle" => PartialConfig {
            l: Some(vec![8, 16, 40]),
            gamma: Some(vec![1.0]),
            h_min: Some(0.04),
            h_max: Some(0.04),
            h_steps: Some(1),
            t_min: Some(0.01),
            t_steps: Some(60),
            ..base
        },
        _ => base,
    }
}

/// Merge flags, optional file, and defaults into a concrete configuration.
pub fn resolve(command: &str, flags: PartialConfig, file: Option<PartialConfig>) -> Result<RunConfig> {
    let merged = match file {
        Some(f) => flags.or(f),
        None => flags,
    }
    .or(defaults(command));
    let cfg = RunConfig {
        command: command.to_string(),
        l: merged.l.unwrap(),
        gamma: merged.gamma.unwrap(),
        h_min: merged.h_min.unwrap(),
        h_max: merged.h_max.unwrap(),
        h_steps: merged.h_steps.unwrap(),
        t_min: merged.t_min.unwrap(),
        t_max: merged.t_max.unwrap(),
        t_steps: merged.t_steps.unwrap(),
        alpha_min: merged.alpha_min.unwrap(),
        alpha_max: merged.alpha_max.unwrap(),
        alpha_steps: merged.alpha_steps.unwrap(),
        cut_h: merged.cut_h.unwrap(),
        cut_t: merged.cut_t.unwrap(),
        kind: merged.kind.unwrap(),
        dist: merged.dist.unwrap(),
        v_values: merged.v_values.unwrap(),
        samples: merged.samples.unwrap(),
        seed: merged.seed.unwrap(),
        threads: merged.threads.unwrap(),
        out: merged.out.unwrap(),
    };
    if cfg.l.is_empty() || cfg.gamma.is_empty() {
        anyhow::bail!("L and gamma lists must be nonempty");
    }
    if cfg.h_steps < 1 || cfg.t_steps < 1 || cfg.alpha_steps < 1 {
        anyhow::bail!("step counts must be >= 1");
    }
    if cfg.samples < 1 {
        anyhow::bail!("samples must be >= 1");
    }
    Ok(cfg)
}
