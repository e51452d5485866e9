//! Derivative-free simplex maximization (Nelder-Mead).
//!
//! The Bell-correlator objectives are smooth, low-dimensional, and cheap,
//! so a plain simplex search with multi-starts is the right tool. The
//! objective is maximized directly; `-inf` values (log of an exactly
//! vanishing coherence) are legal and handled by the ordering.

/// Stopping parameters.
#[derive(Debug, Clone, Copy)]
pub struct SimplexOptions {
    /// Converged when the objective spread across the simplex drops below this.
    pub f_tol: f64,
    /// The simplex diameter must also shrink below this before stopping.
    /// Guards against the false stop on symmetric configurations whose
    /// vertices straddle the maximum at equal objective values.
    pub x_tol: f64,
    /// Hard iteration cap per start.
    pub max_iter: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self {
            f_tol: 1e-12,
            x_tol: 1e-6,
            max_iter: 2000,
        }
    }
}

/// Result of one simplex run.
#[derive(Debug, Clone)]
pub struct SimplexOutcome {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Maximize `f` starting from `start` with initial simplex edge `step`.
pub fn maximize<F: FnMut(&[f64]) -> f64>(
    mut f: F,
    start: &[f64],
    step: f64,
    opts: &SimplexOptions,
) -> SimplexOutcome {
    let dim = start.len();
    let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(dim + 1);
    simplex.push(start.to_vec());
    for i in 0..dim {
        let mut p = start.to_vec();
        p[i] += step;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut iterations = 0;
    let mut converged = false;

    while iterations < opts.max_iter {
        iterations += 1;
        // descending by objective: index 0 best, last worst
        let mut order: Vec<usize> = (0..=dim).collect();
        order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(std::cmp::Ordering::Equal));
        let best = order[0];
        let worst = order[dim];
        let second_worst = order[dim - 1];

        let spread = spread(values[best], values[worst]);
        if spread < opts.f_tol && diameter(&simplex) < opts.x_tol {
            converged = true;
            break;
        }

        // centroid of all but the worst
        let mut centroid = vec![0.0; dim];
        for &idx in order.iter().take(dim) {
            for d in 0..dim {
                centroid[d] += simplex[idx][d];
            }
        }
        for c in centroid.iter_mut() {
            *c /= dim as f64;
        }

        let reflect: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + alpha * (centroid[d] - simplex[worst][d]))
            .collect();
        let f_r = f(&reflect);

        if f_r > values[best] {
            // expansion
            let expand: Vec<f64> = (0..dim)
                .map(|d| centroid[d] + gamma * (reflect[d] - centroid[d]))
                .collect();
            let f_e = f(&expand);
            if f_e > f_r {
                simplex[worst] = expand;
                values[worst] = f_e;
            } else {
                simplex[worst] = reflect;
                values[worst] = f_r;
            }
            continue;
        }
        if f_r > values[second_worst] {
            simplex[worst] = reflect;
            values[worst] = f_r;
            continue;
        }
        // contraction toward the centroid
        let contract: Vec<f64> = (0..dim)
            .map(|d| centroid[d] + rho * (simplex[worst][d] - centroid[d]))
            .collect();
        let f_c = f(&contract);
        if f_c > values[worst] {
            simplex[worst] = contract;
            values[worst] = f_c;
            continue;
        }
        // shrink toward the best
        let anchor = simplex[best].clone();
        for idx in 0..=dim {
            if idx == best {
                continue;
            }
            for d in 0..dim {
                simplex[idx][d] = anchor[d] + sigma * (simplex[idx][d] - anchor[d]);
            }
            values[idx] = f(&simplex[idx]);
        }
    }

    let (mut bi, mut bv) = (0usize, f64::NEG_INFINITY);
    for (i, &v) in values.iter().enumerate() {
        if v > bv || (bv.is_infinite() && bv < 0.0) {
            bi = i;
            bv = v;
        }
    }
    SimplexOutcome {
        x: simplex[bi].clone(),
        value: bv,
        iterations,
        converged,
    }
}

/// Largest vertex-to-vertex distance (infinity norm).
fn diameter(simplex: &[Vec<f64>]) -> f64 {
    let mut d: f64 = 0.0;
    for a in simplex {
        for b in simplex {
            for (x, y) in a.iter().zip(b.iter()) {
                d = d.max((x - y).abs());
            }
        }
    }
    d
}

/// Objective spread with infinities resolved: a simplex stuck entirely at
/// `-inf` counts as flat (the dead region has nothing left to resolve).
fn spread(best: f64, worst: f64) -> f64 {
    if best == f64::NEG_INFINITY && worst == f64::NEG_INFINITY {
        0.0
    } else if !worst.is_finite() || !best.is_finite() {
        f64::INFINITY
    } else {
        best - worst
    }
}
