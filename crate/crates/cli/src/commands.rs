//! The sweep commands. Each one expands its parameter grid into an ordered
//! list of independent work items, evaluates them on the worker pool, and
//! assembles rows in grid order — output bytes are identical for any
//! thread count.

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use std::sync::Arc;

use spinbell_core::{bell, lattice, lmg, oracles};

use crate::config::RunConfig;
use crate::csv::{fmt, fmt_usize, Table};
use crate::grid::linspace;

const NAN: f64 = f64::NAN;

/// Eigenstate sweeps: one row per `(L, gamma, h, v)` with the optimized
/// correlator of every eigenstate; closed-form columns are filled for
/// `gamma = 1` (they are exact there) and `NaN` otherwise.
pub fn eigenstates(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Table> {
    let h_grid = linspace(cfg.h_min, cfg.h_max, cfg.h_steps);
    let mut items = Vec::new();
    for &l in &cfg.l {
        for &gamma in &cfg.gamma {
            for &h in &h_grid {
                items.push((l, gamma, h));
            }
        }
    }
    let seed = cfg.seed;
    let results: Vec<Result<Vec<Vec<String>>>> = pool.install(|| {
        items
            .par_iter()
            .map(|&(l, gamma, h)| -> Result<Vec<Vec<String>>> {
                let spec = lmg::spectrum(&lmg::LmgParams::new(l, gamma, h)?)?;
                let mut rows = Vec::with_capacity(l + 1);
                for (v, state) in spec.states().iter().enumerate() {
                    let r = bell::optimize_bell_symmetric_cfg(
                        &state.density_matrix(),
                        &bell::BellConfig {
                            seed,
                            ..bell::BellConfig::default()
                        },
                    );
                    let mz = state.mean_sz();
                    let (q_binomial, q_gaussian) = if gamma == 1.0 {
                        let m = mz.round();
                        (
                            oracles::binomial_coherence(l, m)?.q,
                            oracles::gaussian_coherence(l, m).q,
                        )
                    } else {
                        (NAN, NAN)
                    };
                    rows.push(vec![
                        fmt_usize(l),
                        fmt(gamma),
                        fmt(h),
                        fmt_usize(v),
                        fmt(spec.energies()[v]),
                        fmt(mz),
                        fmt(r.e),
                        fmt(r.log_e),
                        fmt(r.q),
                        fmt(r.theta_opt[1]),
                        fmt(r.theta_opt[2]),
                        fmt(q_binomial),
                        fmt(q_gaussian),
                    ]);
                }
                Ok(rows)
            })
            .collect()
    });
    let mut table = Table::new(vec![
        "L", "gamma", "h", "v", "energy", "mz", "E", "logE", "Q", "beta", "psi",
        "Q_binomial", "Q_gaussian",
    ]);
    for r in results {
        table.extend(r?);
    }
    Ok(table)
}

/// Thermal maps over the `(h, T)` plane: one row per grid point; negative
/// `Q` rows are emitted (consumers mask them).
pub fn thermal_map(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Table> {
    let h_grid = linspace(cfg.h_min, cfg.h_max, cfg.h_steps);
    let t_grid = linspace(cfg.t_min, cfg.t_max, cfg.t_steps);
    let mut items = Vec::new();
    for &l in &cfg.l {
        for &gamma in &cfg.gamma {
            for &h in &h_grid {
                items.push((l, gamma, h));
            }
        }
    }
    let seed = cfg.seed;
    let t_ref = &t_grid;
    let results: Vec<Result<Vec<Vec<String>>>> = pool.install(|| {
        items
            .par_iter()
            .map(|&(l, gamma, h)| -> Result<Vec<Vec<String>>> {
                let spec = Arc::new(lmg::spectrum(&lmg::LmgParams::new(l, gamma, h)?)?);
                let mut rows = Vec::with_capacity(t_ref.len());
                for &t in t_ref {
                    let gibbs = lmg::gibbs_state(spec.clone(), t)?;
                    let r = bell::thermal_bell_cfg(
                        &gibbs,
                        &bell::BellConfig {
                            seed,
                            ..bell::BellConfig::default()
                        },
                    );
                    rows.push(vec![
                        fmt_usize(l),
                        fmt(gamma),
                        fmt(h),
                        fmt(t),
                        fmt(r.e),
                        fmt(r.q),
                    ]);
                }
                Ok(rows)
            })
            .collect()
    });
    let mut table = Table::new(vec!["L", "gamma", "h", "T", "E", "Q"]);
    for r in results {
        table.extend(r?);
    }
    Ok(table)
}

/// The two figure cuts through the thermal map: `Q(T)` at fixed `h = cut_h`
/// and `Q(h)` at fixed `T = cut_t`, with the interference-sum and envelope
/// oracles alongside (filled for `gamma = 1`, even `L`).
pub fn thermal_cuts(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Table> {
    let t_grid = linspace(cfg.t_min, cfg.t_max, cfg.t_steps);
    let h_grid = linspace(cfg.h_min, cfg.h_max, cfg.h_steps);
    // cut label, L, gamma, h, T
    let mut items: Vec<(&str, usize, f64, f64, f64)> = Vec::new();
    for &l in &cfg.l {
        for &gamma in &cfg.gamma {
            for &t in &t_grid {
                items.push(("T", l, gamma, cfg.cut_h, t));
            }
            for &h in &h_grid {
                items.push(("h", l, gamma, h, cfg.cut_t));
            }
        }
    }
    let seed = cfg.seed;
    let results: Vec<Result<Vec<String>>> = pool.install(|| {
        items
            .par_iter()
            .map(|&(cut, l, gamma, h, t)| -> Result<Vec<String>> {
                let spec = Arc::new(lmg::spectrum(&lmg::LmgParams::new(l, gamma, h)?)?);
                let gibbs = lmg::gibbs_state(spec, t)?;
                let r = bell::thermal_bell_cfg(
                    &gibbs,
                    &bell::BellConfig {
                        seed,
                        ..bell::BellConfig::default()
                    },
                );
                let (q_sum, q_env) = if gamma == 1.0 && l % 2 == 0 && t > 0.0 {
                    (
                        oracles::thermal_sum_oracle(l, h, t)?.q,
                        oracles::envelope_oracle(l, h, t).q,
                    )
                } else if gamma == 1.0 && l % 2 == 0 {
                    (NAN, oracles::envelope_oracle(l, h, t).q)
                } else {
                    (NAN, NAN)
                };
                Ok(vec![
                    cut.to_string(),
                    fmt_usize(l),
                    fmt(gamma),
                    fmt(h),
                    fmt(t),
                    fmt(r.e),
                    fmt(r.q),
                    fmt(q_sum),
                    fmt(q_env),
                ])
            })
            .collect()
    });
    let mut table = Table::new(vec![
        "cut", "L", "gamma", "h", "T", "E", "Q", "Q_sum", "Q_env",
    ]);
    for r in results {
        table.push(r?);
    }
    Ok(table)
}

/// Ground-state correlator against the coupling range: rows per
/// `(L, gamma, alpha)` with the value normalized to the all-to-all case.
/// The `alpha = 0` reference is computed once per `(L, gamma)`, so its own
/// row carries `Q_over_Q0 = 1` exactly.
pub fn alpha_sweep(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Table> {
    let alpha_grid = linspace(cfg.alpha_min, cfg.alpha_max, cfg.alpha_steps);
    let seed = cfg.seed;
    let ground_q = |l: usize, gamma: f64, alpha: f64| -> Result<(f64, f64)> {
        let params = lattice::LatticeParams::power_law(l, gamma, alpha)?;
        let h = lattice::hamiltonian(&params)?;
        let g = lattice::ground_state(&h)?;
        let r = lattice::optimize_bell_local_cfg(
            &g.state,
            &bell::BellConfig {
                seed,
                n_random_starts: 10,
                ..bell::BellConfig::default()
            },
        );
        Ok((r.q, r.e))
    };
    let mut items = Vec::new();
    for &l in &cfg.l {
        for &gamma in &cfg.gamma {
            for &alpha in &alpha_grid {
                items.push((l, gamma, alpha));
            }
        }
    }
    // all-to-all references first (deduplicated per L, gamma)
    let mut refs: Vec<(usize, f64)> = Vec::new();
    for &l in &cfg.l {
        for &gamma in &cfg.gamma {
            refs.push((l, gamma));
        }
    }
    let ref_values: Vec<Result<f64>> = pool.install(|| {
        refs.par_iter()
            .map(|&(l, gamma)| ground_q(l, gamma, 0.0).map(|(q, _)| q))
            .collect()
    });
    let mut q0 = std::collections::HashMap::new();
    for (&(l, gamma), q) in refs.iter().zip(ref_values) {
        q0.insert((l, gamma.to_bits()), q?);
    }
    let results: Vec<Result<Vec<String>>> = pool.install(|| {
        items
            .par_iter()
            .map(|&(l, gamma, alpha)| -> Result<Vec<String>> {
                let q_ref = q0[&(l, gamma.to_bits())];
                // the alpha = 0 row recomputes the identical deterministic
                // bits as the reference, so its ratio is exactly 1
                let (q, e) = ground_q(l, gamma, alpha)?;
                Ok(vec![
                    fmt_usize(l),
                    fmt(gamma),
                    fmt(alpha),
                    fmt(q),
                    fmt(q / q_ref),
                    fmt(e),
                ])
            })
            .collect()
    });
    let mut table = Table::new(vec!["L", "gamma", "alpha", "Q", "Q_over_Q0", "E"]);
    for r in results {
        table.push(r?);
    }
    Ok(table)
}

/// Quenched disorder ensembles: one row per `(L, gamma, kind, dist, V)`
/// with the mean and spread of `Q/Q_clean` over `samples` realizations.
pub fn disorder(cfg: &RunConfig, pool: &rayon::ThreadPool) -> Result<Table> {
    let kinds: Vec<lattice::DisorderKind> = cfg
        .kind
        .iter()
        .map(|k| parse_kind(k))
        .collect::<Result<_>>()?;
    let dists: Vec<lattice::NoiseDist> = cfg
        .dist
        .iter()
        .map(|d| parse_dist(d))
        .collect::<Result<_>>()?;
    let seed = cfg.seed;
    let n_samples = cfg.samples;

    let mut ensembles = Vec::new();
    for &l in &cfg.l {
        for &gamma in &cfg.gamma {
            for &kind in &kinds {
                for &dist in &dists {
                    for &v in &cfg.v_values {
                        ensembles.push((l, gamma, kind, dist, v));
                    }
                }
            }
        }
    }

    // clean references per (L, gamma)
    let mut ref_keys: Vec<(usize, f64)> = Vec::new();
    for &l in &cfg.l {
        for &gamma in &cfg.gamma {
            ref_keys.push((l, gamma));
        }
    }
    let ref_q: Vec<Result<f64>> = pool.install(|| {
        ref_keys
            .par_iter()
            .map(|&(l, gamma)| -> Result<f64> {
                let params = lattice::LatticeParams::power_law(l, gamma, 0.0)?;
                let h = lattice::hamiltonian(&params)?;
                let g = lattice::ground_state(&h)?;
                Ok(lattice::optimize_bell_local(&g.state).q)
            })
            .collect()
    });
    let mut q_clean = std::collections::HashMap::new();
    for (&(l, gamma), q) in ref_keys.iter().zip(ref_q) {
        let q = q?;
        if q <= 0.0 {
            bail!(
                "clean reference Q = {q} <= 0 at L = {l}, gamma = {gamma}: \
                 the relative change is ill-defined; report absolute Q instead"
            );
        }
        q_clean.insert((l, gamma.to_bits()), q);
    }

    // flat (ensemble, sample) work list for load balance
    let mut work = Vec::with_capacity(ensembles.len() * n_samples);
    for (e_idx, &(l, gamma, kind, dist, v)) in ensembles.iter().enumerate() {
        for s in 0..n_samples {
            work.push((e_idx, l, gamma, kind, dist, v, s));
        }
    }
    let sample_q: Vec<Result<f64>> = pool.install(|| {
        work.par_iter()
            .map(|&(_, l, gamma, kind, dist, v, s)| -> Result<f64> {
                let clean = lattice::LatticeParams::power_law(l, gamma, 0.0)?;
                let spec = lattice::DisorderSpec {
                    kind,
                    dist,
                    amplitude: v,
                    n_samples,
                    master_seed: seed,
                };
                Ok(lattice::disorder_sample_q(&clean, &spec, s)?)
            })
            .collect()
    });

    let mut per_ensemble: Vec<Vec<f64>> = vec![Vec::with_capacity(n_samples); ensembles.len()];
    for (&(e_idx, l, gamma, ..), q) in work.iter().zip(sample_q) {
        let q = q.with_context(|| format!("disorder sample at L = {l}, gamma = {gamma}"))?;
        per_ensemble[e_idx].push(q / q_clean[&(l, gamma.to_bits())]);
    }

    let mut table = Table::new(vec![
        "L", "gamma", "kind", "dist", "V", "n_samples", "mean_rel", "std_rel", "seed",
    ]);
    for ((l, gamma, kind, dist, v), rel) in ensembles.into_iter().zip(per_ensemble) {
        let summary = lattice::summarize_ensemble(q_clean[&(l, gamma.to_bits())], rel);
        table.push(vec![
            fmt_usize(l),
            fmt(gamma),
            kind_name(kind).to_string(),
            dist_name(dist).to_string(),
            fmt(v),
            fmt_usize(n_samples),
            fmt(summary.mean_rel),
            fmt(summary.std_rel),
            format!("{seed}"),
        ]);
    }
    Ok(table)
}

/// Closed-form oracle report over `(L, h, T)`: the ground-magnetization
/// coherences, the thermal interference sum, the envelope, the critical
/// temperature, and the double-well minima of the effective potential.
pub fn oracle(cfg: &RunConfig) -> Result<Table> {
    let h_grid = linspace(cfg.h_min, cfg.h_max, cfg.h_steps);
    let t_grid = linspace(cfg.t_min, cfg.t_max, cfg.t_steps);
    let mut table = Table::new(vec![
        "L",
        "h",
        "T",
        "m0",
        "Q_binomial_m0",
        "Q_gaussian_m0",
        "Q_linear_m0",
        "Q_sum",
        "Q_env",
        "T_crit",
        "z_minimum",
    ]);
    for &l in &cfg.l {
        for &h in &h_grid {
            for &t in &t_grid {
                let m0 = lmg::gamma1_ground_m(h, l);
                let q_binomial = oracles::binomial_coherence(l, m0)?.q;
                let q_gaussian = oracles::gaussian_coherence(l, m0).q;
                let q_linear = oracles::q_energy_linear(lmg::gamma1_energy(m0, 0.0, l)?, l);
                let q_sum = if l % 2 == 0 && t > 0.0 {
                    oracles::thermal_sum_oracle(l, h, t)?.q
                } else {
                    NAN
                };
                let q_env = oracles::envelope_oracle(l, h, t).q;
                let z0 = if h != 0.0 {
                    oracles::well_minima(1.0 / h).map(|(_, hi)| hi).unwrap_or(NAN)
                } else {
                    NAN
                };
                table.push(vec![
                    fmt_usize(l),
                    fmt(h),
                    fmt(t),
                    fmt(m0),
                    fmt(q_binomial),
                    fmt(q_gaussian),
                    fmt(q_linear),
                    fmt(q_sum),
                    fmt(q_env),
                    fmt(oracles::t_crit(h)),
                    fmt(z0),
                ]);
            }
        }
    }
    Ok(table)
}

fn parse_kind(s: &str) -> Result<lattice::DisorderKind> {
    match s {
        "diagonal" => Ok(lattice::DisorderKind::Diagonal),
        "offdiagonal" => Ok(lattice::DisorderKind::OffDiagonal),
        other => bail!("unknown disorder kind {other} (expected diagonal|offdiagonal)"),
    }
}

fn parse_dist(s: &str) -> Result<lattice::NoiseDist> {
    match s {
        "p1" => Ok(lattice::NoiseDist::Uniform),
        "p2" => Ok(lattice::NoiseDist::Arcsine),
        other => bail!("unknown noise distribution {other} (expected p1|p2)"),
    }
}

fn kind_name(k: lattice::DisorderKind) -> &'static str {
    match k {
        lattice::DisorderKind::Diagonal => "diagonal",
        lattice::DisorderKind::OffDiagonal => "offdiagonal",
    }
}

fn dist_name(d: lattice::NoiseDist) -> &'static str {
    match d {
        lattice::NoiseDist::Uniform => "p1",
        lattice::NoiseDist::Arcsine => "p2",
    }
}
