//! Figure-level qualitative claims exercised at desk scale: the shapes the
//! sweep commands exist to reproduce.

use std::sync::Arc;

use spinbell_core::bell;
use spinbell_core::lmg::{self, LmgParams};

/// gamma = 0 eigenstate correlators vary smoothly with the field, in
/// contrast to the gamma = 1 staircases.
#[test]
fn gamma0_ground_q_is_continuous_in_h() {
    let mut prev: Option<f64> = None;
    let mut max_step: f64 = 0.0;
    for k in 0..=40 {
        let h = 0.08 + k as f64 * 1e-3;
        let spec = lmg::spectrum(&LmgParams::new(4, 0.0, h).unwrap()).unwrap();
        let q = bell::optimize_bell_symmetric(&spec.ground_state().density_matrix()).q;
        if let Some(p) = prev {
            max_step = max_step.max((q - p).abs());
        }
        prev = Some(q);
    }
    assert!(
        max_step < 0.02,
        "adjacent grid points at dh = 1e-3 jumped by {max_step}"
    );
}

/// The positive-Q region of the gamma = 1 thermal map is contained in
/// h < sqrt(ln 2), the field beyond which Bell correlations vanish at
/// every temperature.
#[test]
fn thermal_map_positive_region_is_bounded_in_h() {
    let h_limit = std::f64::consts::LN_2.sqrt();
    let mut max_positive_h: f64 = 0.0;
    for i in 0..=12 {
        let h = i as f64 * 0.1;
        let spec = Arc::new(lmg::spectrum(&LmgParams::new(40, 1.0, h).unwrap()).unwrap());
        for j in 0..=6 {
            let t = j as f64 * 0.1;
            let q = bell::thermal_bell(&lmg::gibbs_state(spec.clone(), t).unwrap()).q;
            if q > 0.0 {
                max_positive_h = max_positive_h.max(h);
            }
        }
    }
    assert!(
        max_positive_h < h_limit,
        "positive Q found at h = {max_positive_h}, beyond sqrt(ln 2) = {h_limit:.4}"
    );
}

/// For gamma = 0 the temperature extent of the positive-Q region shrinks
/// as the field decreases: the quasi-degenerate doublet's opposite-sign
/// coherences cancel at any T > 0 once the gap collapses.
#[test]
fn gamma0_positive_region_shrinks_with_field() {
    let extent = |h: f64| -> f64 {
        let spec = Arc::new(lmg::spectrum(&LmgParams::new(16, 0.0, h).unwrap()).unwrap());
        let mut extent = 0.0f64;
        for k in 0..=30 {
            let t = k as f64 * 0.002;
            let q = bell::thermal_bell(&lmg::gibbs_state(spec.clone(), t).unwrap()).q;
            if q > 0.0 {
                extent = t;
            }
        }
        extent
    };
    let (e_small, e_mid, e_large) = (extent(0.1), extent(0.4), extent(0.5));
    assert!(
        e_small <= e_mid && e_mid < e_large,
        "extents {e_small}, {e_mid}, {e_large} are not nondecreasing in h"
    );
}
