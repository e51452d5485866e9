//! The `spinbell validate` harness: the library invariant suite plus
//! front-end reproducibility checks, reported human- and machine-readably.

use std::time::Instant;

use anyhow::Result;
use serde::Serialize;

use spinbell_core::checks::{self, CheckResult};

use crate::config::{self, PartialConfig, RunConfig};

/// One machine-readable report entry.
#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub name: String,
    pub pass: bool,
    pub measured: f64,
    pub tolerance: f64,
    pub seconds: f64,
}

impl From<CheckResult> for ReportEntry {
    fn from(c: CheckResult) -> Self {
        ReportEntry {
            name: c.name,
            pass: c.pass,
            measured: c.measured,
            tolerance: c.tolerance,
            seconds: c.seconds,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub all_pass: bool,
    pub total_seconds: f64,
    pub checks: Vec<ReportEntry>,
}

/// Run everything; `inject_failure` adds a deliberately failing check so
/// the harness itself can be tested end to end.
pub fn run(seed: u64, inject_failure: bool) -> Result<Report> {
    let t0 = Instant::now();
    let mut entries: Vec<ReportEntry> = if inject_failure {
        checks::run_all_with_injected_failure(seed)
    } else {
        checks::run_all(seed)
    }
    .into_iter()
    .map(ReportEntry::from)
    .collect();
    entries.extend(frontend_checks(seed)?);
    let all_pass = entries.iter().all(|e| e.pass);
    Ok(Report {
        seed,
        all_pass,
        total_seconds: t0.elapsed().as_secs_f64(),
        checks: entries,
    })
}

/// Sweep-level invariants: identical CSV bytes across thread counts,
/// manifest round-trips, and grid-sized row counts, all exercised on a
/// small in-process eigenstate sweep.
fn frontend_checks(seed: u64) -> Result<Vec<ReportEntry>> {
    let mut out = Vec::new();
    let small = |threads: usize| -> Result<(RunConfig, String)> {
        let flags = PartialConfig {
            l: Some(vec![4]),
            gamma: Some(vec![1.0, 0.0]),
            h_min: Some(0.0),
            h_max: Some(0.5),
            h_steps: Some(11),
            seed: Some(seed),
            threads: Some(threads),
            ..PartialConfig::default()
        };
        let cfg = config::resolve("eigenstates", flags, None)?;
        let csv = crate::run_command(&cfg)?;
        Ok((cfg, csv))
    };

    let t0 = Instant::now();
    let (cfg1, csv1) = small(1)?;
    let (_, csv2) = small(2)?;
    out.push(ReportEntry {
        name: "sweep/CSV bytes identical across thread counts".into(),
        pass: csv1 == csv2,
        measured: if csv1 == csv2 { 0.0 } else { 1.0 },
        tolerance: 0.0,
        seconds: t0.elapsed().as_secs_f64(),
    });

    let t0 = Instant::now();
    let manifest = config::Manifest::for_run(&cfg1);
    let manifest_json = serde_json::to_string_pretty(&manifest)?;
    let reloaded: serde_json::Value = serde_json::from_str(&manifest_json)?;
    let partial: PartialConfig = serde_json::from_value(reloaded["config"].clone())?;
    let cfg_re = config::resolve("eigenstates", PartialConfig::default(), Some(partial))?;
    let csv_re = crate::run_command(&cfg_re)?;
    out.push(ReportEntry {
        name: "sweep/manifest reproduces the CSV bitwise".into(),
        pass: csv_re == csv1,
        measured: if csv_re == csv1 { 0.0 } else { 1.0 },
        tolerance: 0.0,
        seconds: t0.elapsed().as_secs_f64(),
    });

    let t0 = Instant::now();
    let rows = csv1.lines().count() - 1;
    let expect = 1 * 2 * 11 * 5; // L-list x gamma-list x h-grid x (L+1) states
    out.push(ReportEntry {
        name: "sweep/row count equals the grid-point count".into(),
        pass: rows == expect,
        measured: (rows as f64 - expect as f64).abs(),
        tolerance: 0.0,
        seconds: t0.elapsed().as_secs_f64(),
    });
    Ok(out)
}

/// Render the human-readable report.
pub fn render(report: &Report) -> String {
    let mut out = String::new();
    for c in &report.checks {
        out.push_str(&format!(
            "{} {:<58} measured {:>12.4e}  tolerance {:>9.1e}  [{:.2}s]\n",
            if c.pass { "PASS" } else { "FAIL" },
            c.name,
            c.measured,
            c.tolerance,
            c.seconds,
        ));
    }
    let n_fail = report.checks.iter().filter(|c| !c.pass).count();
    out.push_str(&format!(
        "{} checks, {} failed, {:.1}s total (seed {:#x})\n",
        report.checks.len(),
        n_fail,
        report.total_seconds,
        report.seed,
    ));
    out
}
