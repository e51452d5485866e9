//! Grid construction shared by the sweep commands.

/// `steps` evenly spaced points from `min` to `max` inclusive;
/// `steps = 1` yields just `min`.
pub fn linspace(min: f64, max: f64, steps: usize) -> Vec<f64> {
    assert!(steps >= 1, "linspace needs at least one point");
    if steps == 1 {
        return vec![min];
    }
    let h = (max - min) / (steps - 1) as f64;
    (0..steps).map(|i| min + i as f64 * h).collect()
}
