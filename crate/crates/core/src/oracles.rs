//! Closed-form results used to cross-check the exact numerics.
//!
//! Everything here is independently evaluable (log-domain combinatorics,
//! explicit sums, explicit formulas) and never calls the eigensolvers it
//! is meant to check, with one deliberate exception: `doublet_diagnostics`
//! consumes a spectrum and reports on its lowest pair.

use nalgebra::DMatrix;

use crate::bell::{self, q_from_log_e};
use crate::lmg::Spectrum;
use crate::numeric::{ln_binomial, log_sum_exp, signed_log_sum_exp};
use crate::{Error, Result};

/// A closed-form prediction for the correlator, in log form.
#[derive(Debug, Clone)]
pub struct OracleValue {
    /// Natural log of the predicted `E`; `-inf` for exact cancellation.
    pub log_e: f64,
    /// Normalized value `Q = log2(2^L E)`.
    pub q: f64,
    /// Regime in which the formula is exact or meaningful.
    pub valid_domain: &'static str,
}

impl OracleValue {
    fn new(log_e: f64, l: usize, valid_domain: &'static str) -> Self {
        Self {
            log_e,
            q: q_from_log_e(log_e, l),
            valid_domain,
        }
    }

    pub fn e(&self) -> f64 {
        self.log_e.exp()
    }
}

/// Exact correlator of the Dicke state `|S,m>`:
/// `E = [2^-L C(L, m + L/2)]^2`, evaluated in log domain.
pub fn binomial_coherence(l: usize, m: f64) -> Result<OracleValue> {
    let k = m + l as f64 / 2.0;
    let kr = k.round();
    if (k - kr).abs() > 1e-9 || kr < 0.0 || kr > l as f64 {
        return Err(Error::InvalidParam(format!(
            "m = {m} is outside the ladder of L = {l}"
        )));
    }
    let log_amp = ln_binomial(l as u64, kr as u64) - l as f64 * std::f64::consts::LN_2;
    Ok(OracleValue::new(
        2.0 * log_amp,
        l,
        "exact for every Dicke state",
    ))
}

/// Gaussian approximation `E = (2/(pi L)) exp(-4 m^2 / L)`.
pub fn gaussian_coherence(l: usize, m: f64) -> OracleValue {
    let lf = l as f64;
    let log_e = (2.0 / (std::f64::consts::PI * lf)).ln() - 4.0 * m * m / lf;
    OracleValue::new(log_e, l, "large L and |m| << L")
}

/// Slope of the linear Q-energy relation, `2 / ln 2`.
pub const ALPHA_LIN: f64 = 2.0 / std::f64::consts::LN_2;
/// Coefficient of `L` in the linear Q-energy relation.
pub const BETA_LIN: f64 = 1.0;

/// Offset of the linear Q-energy relation, `log2(2/(pi L))`.
pub fn gamma_lin(l: usize) -> f64 {
    (2.0 / (std::f64::consts::PI * l as f64)).log2()
}

/// Linear relation between the zero-field `gamma = 1` eigenenergy and `Q`:
/// `Q = -alpha E_m + beta L + gamma_lin(L)`.
///
/// Algebraically identical to [`gaussian_coherence`] evaluated at the `m`
/// of that energy. (The offset is named `gamma_lin` to keep clear of the
/// model anisotropy `gamma`.)
pub fn q_energy_linear(e_m: f64, l: usize) -> f64 {
    -ALPHA_LIN * e_m + BETA_LIN * l as f64 + gamma_lin(l)
}

/// Thermal interference sum for the `gamma = 1` Gibbs state, even `L`:
///
/// `E(T) = |sum_m (-1)^m e^(-E_m/T) b_m|^2 / Z^2`,
/// `b_m = 2^-L C(L, m + L/2)`, `E_m = (2/L) m^2 - 2 h m`,
/// `Z = sum_m e^(-E_m/T)`,
///
/// with every sum max-shifted in log domain. The alternating sign is the
/// exact sign pattern of the product of edge Wigner-d elements at `pi/2`,
/// and `b_m` is their exact modulus, so at `T -> 0` this reduces to
/// [`binomial_coherence`] at the ground magnetization.
///
/// Odd `L` is rejected: `(-1)^m` is ambiguous on a half-integer ladder.
pub fn thermal_sum_oracle(l: usize, h: f64, t: f64) -> Result<OracleValue> {
    if l < 2 || l % 2 != 0 {
        return Err(Error::InvalidParam(format!(
            "thermal interference sum needs even L >= 2, got {l}"
        )));
    }
    if !(t > 0.0) {
        return Err(Error::InvalidParam(format!("temperature T = {t} must be > 0")));
    }
    let lf = l as f64;
    let half = (l / 2) as i64;
    let ln2 = std::f64::consts::LN_2;
    let energies: Vec<f64> = (-half..=half)
        .map(|m| {
            let mf = m as f64;
            2.0 / lf * mf * mf - 2.0 * h * mf
        })
        .collect();
    let e_min = energies.iter().cloned().fold(f64::INFINITY, f64::min);

    let mut num_terms = Vec::with_capacity(l + 1);
    let mut z_terms = Vec::with_capacity(l + 1);
    for (i, m) in (-half..=half).enumerate() {
        let boltz = -(energies[i] - e_min) / t;
        let log_b = ln_binomial(l as u64, (m + half) as u64) - lf * ln2;
        let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        num_terms.push((boltz + log_b, sign));
        z_terms.push(boltz);
    }
    let (log_num, _) = signed_log_sum_exp(&num_terms);
    let log_z = log_sum_exp(&z_terms);
    Ok(OracleValue::new(
        2.0 * (log_num - log_z),
        l,
        "gamma = 1 thermal states, even L",
    ))
}

/// Gaussian-integral envelope of the thermal correlator:
/// `E = (pi/2) (1/(L(T+1))) exp(-h^2 L/(1+T)) exp(-pi^2 L T/(4(1+T)))`.
pub fn envelope_oracle(l: usize, h: f64, t: f64) -> OracleValue {
    let lf = l as f64;
    let log_e = (std::f64::consts::PI / 2.0).ln() - (lf * (t + 1.0)).ln()
        - h * h * lf / (1.0 + t)
        - std::f64::consts::PI.powi(2) * lf * t / (4.0 * (1.0 + t));
    OracleValue::new(log_e, l, "T << L")
}

/// Critical temperature of the `gamma = 1` family,
/// `T_crit = (ln 2 - h^2) / (pi^2/4 - ln 2)`, clamped at zero.
///
/// Size-independent; vanishes at `h = sqrt(ln 2) ~ 0.83`.
pub fn t_crit(h: f64) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let num = ln2 - h * h;
    if num <= 0.0 {
        0.0
    } else {
        num / (std::f64::consts::PI.powi(2) / 4.0 - ln2)
    }
}

/// The `gamma = 0` Hamiltonian projected on the `Sx` eigenbasis: a real
/// symmetric tridiagonal matrix with diagonal `-(L/2) z_m^2` and
/// off-diagonal `h L f_+(z_m)` linking `m` and `m+1`, where `z_m = 2m/L`
/// and `f_+-(z) = sqrt(((1 -+ z)/2) ((1 +- z)/2 + 1/L))`.
///
/// `h L f_+(z_m) = h sqrt((S-m)(S+m+1))` exactly, so this has the same
/// spectrum as the dense `gamma = 0` model (the printed off-diagonal sign
/// is gauged away by `psi_m -> (-1)^m psi_m`).
pub fn sx_tridiagonal(l: usize, h: f64) -> Result<DMatrix<f64>> {
    if l < 2 {
        return Err(Error::InvalidParam(format!("L = {l} must be at least 2")));
    }
    if !h.is_finite() {
        return Err(Error::InvalidParam(format!("h = {h} must be finite")));
    }
    let lf = l as f64;
    let s = lf / 2.0;
    let dim = l + 1;
    let mut mat = DMatrix::<f64>::zeros(dim, dim);
    for i in 0..dim {
        let m = -s + i as f64;
        let z = 2.0 * m / lf;
        mat[(i, i)] = -lf / 2.0 * z * z;
        if i + 1 < dim {
            let f_plus = (((1.0 - z) / 2.0) * ((1.0 + z) / 2.0 + 1.0 / lf)).sqrt();
            let hop = h * lf * f_plus;
            mat[(i + 1, i)] = hop;
            mat[(i, i + 1)] = hop;
        }
    }
    Ok(mat)
}

/// Eigenvalues of [`sx_tridiagonal`], ascending.
pub fn sx_spectrum(l: usize, h: f64) -> Result<Vec<f64>> {
    Ok(crate::eigen::real_eigenvalues(&sx_tridiagonal(l, h)?))
}

/// One point of the continuum effective potential of the `gamma = 0` model.
#[derive(Debug, Clone, Copy)]
pub struct EffectivePotentialPoint {
    /// Normalized magnetization `z = 2m/L`, in `[-1, 1]`.
    pub z: f64,
    /// `V_eff(z) = -sqrt(1 - z^2) + z^2 kappa / 2`.
    pub v: f64,
    /// `kappa = 1/h`.
    pub kappa: f64,
}

/// Evaluate the effective potential at `z` for field `h != 0`.
pub fn effective_potential(z: f64, h: f64) -> Result<EffectivePotentialPoint> {
    if z.abs() > 1.0 {
        return Err(Error::InvalidParam(format!("|z| = {} exceeds 1", z.abs())));
    }
    if h == 0.0 || !h.is_finite() {
        return Err(Error::InvalidParam(format!(
            "kappa = 1/h needs finite nonzero h, got {h}"
        )));
    }
    let kappa = 1.0 / h;
    let v = -(1.0 - z * z).sqrt() + z * z * kappa / 2.0;
    Ok(EffectivePotentialPoint { z, v, kappa })
}

/// Double-well minima `+-z0 = +-sqrt(1 - 1/kappa^2)` for `|kappa| > 1`.
///
/// As printed, the potential develops the symmetric pair once `|kappa|`
/// passes 1; below that the expression is imaginary and no pair exists.
pub fn well_minima(kappa: f64) -> Option<(f64, f64)> {
    if kappa.abs() > 1.0 {
        let z0 = (1.0 - 1.0 / (kappa * kappa)).sqrt();
        Some((-z0, z0))
    } else {
        None
    }
}

/// Gap and rotated-coherence signs of the two lowest states of a spectrum.
#[derive(Debug, Clone, Copy)]
pub struct DoubletDiagnostics {
    /// `E_1 - E_0`.
    pub gap: f64,
    /// Real parts of the GHZ coherences of the ground and first excited
    /// state, both evaluated at the ground state's optimal angles.
    pub coherence_re: (f64, f64),
}

impl DoubletDiagnostics {
    /// Signum pair of the coherence real parts.
    pub fn signs(&self) -> (f64, f64) {
        (self.coherence_re.0.signum(), self.coherence_re.1.signum())
    }
}

/// Diagnose the lowest doublet: optimize the ground state's correlator,
/// then reuse those angles on the first excited state.
///
/// For the near-degenerate doublets of the `gamma = 0, -1` models at small
/// field, the two coherences come out with opposite signs — the mechanism
/// by which any nonzero temperature destroys the Bell correlations there.
pub fn doublet_diagnostics(spectrum: &Spectrum) -> DoubletDiagnostics {
    let rho0 = spectrum.ground_state().density_matrix();
    let rho1 = spectrum.states()[1].density_matrix();
    let opt = bell::optimize_bell_symmetric(&rho0);
    let (beta, psi) = (opt.theta_opt[1], opt.theta_opt[2]);
    let c0 = bell::ghz_coherence_euler(&rho0, beta, psi);
    let c1 = bell::ghz_coherence_euler(&rho1, beta, psi);
    DoubletDiagnostics {
        gap: spectrum.lowest_gap(),
        coherence_re: (c0.re, c1.re),
    }
}
