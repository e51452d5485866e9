//! Browser bindings: three interactive views over the core library,
//! returning flat `Float64Array` payloads that plain JS draws on canvases.
//!
//! The demo dials the optimizer's random restarts down (the deterministic
//! axis starts dominate for these landscapes) so sliders stay responsive;
//! everything else is the exact production code path.

use wasm_bindgen::prelude::*;

use spinbell_core::bell::{self, BellConfig};
use spinbell_core::dicke::SymmetricDensityMatrix;
use spinbell_core::lmg::{self, LmgParams};
use spinbell_core::oracles;

fn demo_config() -> BellConfig {
    BellConfig {
        n_random_starts: 6,
        ..BellConfig::default()
    }
}

fn optimized_q(rho: &SymmetricDensityMatrix) -> f64 {
    bell::optimize_bell_symmetric_cfg(rho, &demo_config()).q
}

/// Optimized `Q` of every eigenstate over a field sweep.
///
/// Returns `steps` rows of `[h, Q_0, ..., Q_L]`, flattened row-major
/// (row width `L + 2`). Empty on invalid input.
#[wasm_bindgen]
pub fn eigenstate_sweep(l: usize, gamma: f64, h_min: f64, h_max: f64, steps: usize) -> Vec<f64> {
    if l < 2 || l > 24 || steps < 2 || !h_min.is_finite() || !h_max.is_finite() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(steps * (l + 2));
    for i in 0..steps {
        let h = h_min + (h_max - h_min) * i as f64 / (steps - 1) as f64;
        let Ok(params) = LmgParams::new(l, gamma, h) else {
            return Vec::new();
        };
        let Ok(spec) = lmg::spectrum(&params) else {
            return Vec::new();
        };
        out.push(h);
        for state in spec.states() {
            out.push(optimized_q(&state.density_matrix()));
        }
    }
    out
}

/// Thermal correlator along a temperature cut at fixed field, with the
/// closed-form interference sum and envelope overlays where they apply
/// (`gamma = 1`, even `L`).
///
/// Returns `steps` rows of `[T, Q_exact, Q_sum, Q_envelope]`; the overlay
/// slots hold `NaN` outside their domain.
#[wasm_bindgen]
pub fn thermal_cut(l: usize, gamma: f64, h: f64, t_min: f64, t_max: f64, steps: usize) -> Vec<f64> {
    if l < 2 || l > 40 || steps < 2 {
        return Vec::new();
    }
    let Ok(params) = LmgParams::new(l, gamma, h) else {
        return Vec::new();
    };
    let Ok(spec) = lmg::spectrum(&params) else {
        return Vec::new();
    };
    let spec = std::sync::Arc::new(spec);
    let mut out = Vec::with_capacity(steps * 4);
    for i in 0..steps {
        let t = t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64;
        let Ok(gibbs) = lmg::gibbs_state(spec.clone(), t) else {
            return Vec::new();
        };
        let q = bell::thermal_bell_cfg(&gibbs, &demo_config()).q;
        let q_sum = if gamma == 1.0 && l % 2 == 0 && t > 0.0 {
            oracles::thermal_sum_oracle(l, h, t)
                .map(|o| o.q)
                .unwrap_or(f64::NAN)
        } else {
            f64::NAN
        };
        let q_env = if gamma == 1.0 && l % 2 == 0 {
            oracles::envelope_oracle(l, h, t).q
        } else {
            f64::NAN
        };
        out.push(t);
        out.push(q);
        out.push(q_sum);
        out.push(q_env);
    }
    out
}

/// Critical temperature of the `gamma = 1` family at field `h`.
#[wasm_bindgen]
pub fn critical_temperature(h: f64) -> f64 {
    oracles::t_crit(h)
}

/// The effective double-well potential of the `gamma = 0` model.
///
/// Returns `points` rows of `[z, V_eff(z)]` followed by one trailer row
/// `[z0, V_eff(z0)]` holding the positive well minimum (`NaN`s when the
/// well has not formed, i.e. `|1/h| <= 1`).
#[wasm_bindgen]
pub fn effective_potential_curve(h: f64, points: usize) -> Vec<f64> {
    if points < 2 || h == 0.0 || !h.is_finite() {
        return Vec::new();
    }
    let mut out = Vec::with_capacity((points + 1) * 2);
    for i in 0..points {
        let z = -1.0 + 2.0 * i as f64 / (points - 1) as f64;
        match oracles::effective_potential(z, h) {
            Ok(p) => {
                out.push(p.z);
                out.push(p.v);
            }
            Err(_) => return Vec::new(),
        }
    }
    match oracles::well_minima(1.0 / h) {
        Some((_, z0)) => {
            let v0 = oracles::effective_potential(z0, h).map(|p| p.v).unwrap_or(f64::NAN);
            out.push(z0);
            out.push(v0);
        }
        None => {
            out.push(f64::NAN);
            out.push(f64::NAN);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenstate_payload_shape_and_values() {
        let data = eigenstate_sweep(4, 1.0, 0.0, 0.2, 3);
        assert_eq!(data.len(), 3 * 6);
        // h = 0 row: ground state is |S,0> with Q = log2(2.25)
        assert_eq!(data[0], 0.0);
        assert!((data[1] - 2.25f64.log2()).abs() < 1e-6);
        assert!(eigenstate_sweep(1, 1.0, 0.0, 1.0, 3).is_empty());
    }

    #[test]
    fn thermal_payload_matches_oracle() {
        let data = thermal_cut(8, 1.0, 0.04, 0.05, 0.3, 4);
        assert_eq!(data.len(), 16);
        for row in data.chunks(4) {
            assert!((row[1] - row[2]).abs() < 1e-3, "exact vs sum at T={}", row[0]);
            assert!(row[3].is_finite());
        }
    }

    #[test]
    fn potential_payload_has_minima_trailer() {
        let data = effective_potential_curve(0.5, 21);
        assert_eq!(data.len(), 44);
        let z0 = data[42];
        assert!((z0 - (1.0f64 - 0.25).sqrt()).abs() < 1e-12);
        // no well above the threshold field
        let flat = effective_potential_curve(1.5, 5);
        assert!(flat[10].is_nan());
    }
}
