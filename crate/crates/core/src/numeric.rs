//! Log-domain combinatorics and small numeric helpers.
//!
//! Factorials and binomials are never formed as integers: `40!` already
//! overflows `u64`, so everything lives in natural-log space and is
//! exponentiated only when the result is known to fit.

use nalgebra::DMatrix;
use num_complex::Complex64;

/// Natural log of `n!`, computed as a cumulative sum of logs.
///
/// Relative error grows like `n * eps`, which at `n = 64` is ~1e-14 —
/// well inside every tolerance used in this crate.
pub fn ln_factorial(n: u64) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Natural log of the binomial coefficient `C(n, k)`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    assert!(k <= n, "ln_binomial: k = {k} > n = {n}");
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Max-shifted `log(sum(exp(l)))` over positive terms given as logs.
///
/// Empty input, or input that is all `-inf`, gives `-inf`.
pub fn log_sum_exp(logs: &[f64]) -> f64 {
    let m = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return f64::NEG_INFINITY;
    }
    let s: f64 = logs.iter().map(|&l| (l - m).exp()).sum();
    m + s.ln()
}

/// Max-shifted signed sum. Terms are `(log magnitude, sign)`.
///
/// Returns `(log |sum|, signum of sum)`; exact cancellation (or empty
/// input) gives `(-inf, 0.0)`.
pub fn signed_log_sum_exp(terms: &[(f64, f64)]) -> (f64, f64) {
    let m = terms
        .iter()
        .filter(|(_, s)| *s != 0.0)
        .map(|(l, _)| *l)
        .fold(f64::NEG_INFINITY, f64::max);
    if !m.is_finite() {
        return (f64::NEG_INFINITY, 0.0);
    }
    let s: f64 = terms
        .iter()
        .map(|&(l, sign)| sign * (l - m).exp())
        .sum();
    if s == 0.0 {
        (f64::NEG_INFINITY, 0.0)
    } else {
        (m + s.abs().ln(), s.signum())
    }
}

/// FNV-1a over a byte stream; used to derive per-input RNG streams.
pub fn fnv1a(bytes: impl IntoIterator<Item = u8>) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

/// Deterministic 64-bit fingerprint of a complex matrix (exact bit pattern).
pub fn hash_complex_matrix(m: &DMatrix<Complex64>) -> u64 {
    let bytes = m
        .iter()
        .flat_map(|c| {
            c.re.to_bits()
                .to_le_bytes()
                .into_iter()
                .chain(c.im.to_bits().to_le_bytes())
        })
        .chain((m.nrows() as u64).to_le_bytes());
    fnv1a(bytes)
}

/// Deterministic 64-bit fingerprint of a complex vector.
pub fn hash_complex_slice(v: &[Complex64]) -> u64 {
    fnv1a(v.iter().flat_map(|c| {
        c.re.to_bits()
            .to_le_bytes()
            .into_iter()
            .chain(c.im.to_bits().to_le_bytes())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorial_matches_direct_products() {
        assert_eq!(ln_factorial(0), 0.0);
        assert_eq!(ln_factorial(1), 0.0);
        assert!((ln_factorial(5) - 120.0f64.ln()).abs() < 1e-13);
        // 20! = 2432902008176640000 still fits u64
        assert!((ln_factorial(20) - 2432902008176640000.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn binomial_log_values() {
        assert!((ln_binomial(4, 2) - 6.0f64.ln()).abs() < 1e-13);
        assert!((ln_binomial(40, 20) - 137846528820.0f64.ln()).abs() < 1e-11);
        assert_eq!(ln_binomial(7, 0), 0.0);
    }

    #[test]
    fn signed_sum_cancellation_is_neg_inf() {
        let (l, s) = signed_log_sum_exp(&[(0.0, 1.0), (0.0, -1.0)]);
        assert_eq!(l, f64::NEG_INFINITY);
        assert_eq!(s, 0.0);
    }

    #[test]
    fn signed_sum_matches_plain_arithmetic() {
        let terms = [(1.2f64, 1.0), (0.3, -1.0), (-2.0, 1.0)];
        let direct: f64 = terms.iter().map(|&(l, s)| s * l.exp()).sum();
        let (l, s) = signed_log_sum_exp(&terms);
        assert!((s * l.exp() - direct).abs() < 1e-14 * direct.abs());
    }

    #[test]
    fn log_sum_exp_shifts_large_arguments() {
        // would overflow without the max shift
        let l = log_sum_exp(&[1000.0, 1000.0]);
        assert!((l - (1000.0 + 2.0f64.ln())).abs() < 1e-12);
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
    }

    #[test]
    fn fnv_is_order_sensitive() {
        assert_ne!(fnv1a([1, 2, 3]), fnv1a([3, 2, 1]));
    }
}
