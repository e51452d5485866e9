//! LMG Hamiltonians in the symmetric sector, exact diagonalization, the
//! closed-form `gamma = 1` spectrum, and Gibbs thermal states.
//!
//! The Hamiltonian family is `H = -(2/L)(Sx^2 + gamma Sy^2) - 2 h Sz`,
//! with additive L-dependent constants dropped throughout; the Gibbs
//! construction subtracts the ground energy, so those constants can never
//! influence a thermal state.

use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dicke::{
    collective_ops, CollectiveOperator, DickeBasis, SymmetricDensityMatrix, SymmetricState,
};
use crate::eigen;
use crate::{Error, Result};

/// Parameters of one LMG model instance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmgParams {
    /// Particle count, `>= 2`.
    pub l: usize,
    /// Anisotropy of the `Sy^2` coupling; `-1, 0, +1` are the emblematic cases.
    pub gamma: f64,
    /// Magnetic field along z.
    pub h: f64,
}

impl LmgParams {
    pub fn new(l: usize, gamma: f64, h: f64) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidParam(format!("L = {l} must be at least 2")));
        }
        if !gamma.is_finite() || !h.is_finite() {
            return Err(Error::InvalidParam(format!(
                "gamma = {gamma}, h = {h} must be finite"
            )));
        }
        Ok(Self { l, gamma, h })
    }

    pub fn basis(&self) -> DickeBasis {
        DickeBasis::new(self.l).expect("validated at construction")
    }
}

/// Build `H = -(2/L)(Sx^2 + gamma Sy^2) - 2 h Sz` on the symmetric sector.
pub fn hamiltonian(params: &LmgParams) -> Result<CollectiveOperator> {
    let params = LmgParams::new(params.l, params.gamma, params.h)?;
    let basis = params.basis();
    let ops = collective_ops(&basis);
    let sx2 = ops.sx.matrix() * ops.sx.matrix();
    let sy2 = ops.sy.matrix() * ops.sy.matrix();
    let mut h = (sx2 + sy2.scale(params.gamma)).scale(-2.0 / params.l as f64)
        - ops.sz.matrix().scale(2.0 * params.h);
    // symmetrize away floating-point asymmetry from the products
    h = (h.clone() + h.adjoint()).scale(0.5);
    CollectiveOperator::new(basis, h)
}

/// Eigenvalues and eigenvectors of a symmetric-sector Hamiltonian,
/// energies ascending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    basis: DickeBasis,
    energies: Vec<f64>,
    states: Vec<SymmetricState>,
}

impl Spectrum {
    pub fn basis(&self) -> &DickeBasis {
        &self.basis
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn states(&self) -> &[SymmetricState] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    pub fn ground_state(&self) -> &SymmetricState {
        &self.states[0]
    }

    /// Gap between the two lowest levels.
    pub fn lowest_gap(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }

    /// Indices of the numerically degenerate ground cluster.
    pub fn ground_cluster(&self) -> std::ops::Range<usize> {
        eigen::degenerate_clusters(&self.energies)
            .into_iter()
            .next()
            .unwrap_or(0..0)
    }
}

/// Full eigendecomposition with deterministic ordering.
///
/// Energies ascend; numerically degenerate clusters (relative gap below
/// 1e-10 of the spectral range) are canonicalized by re-diagonalizing the
/// spin-flip parity and then `Sz` restricted to the cluster, ordered by
/// ascending `<Sz>`, and every state's first significant amplitude is made
/// real positive. Rejects non-Hermitian input.
pub fn diagonalize(op: &CollectiveOperator) -> Result<Spectrum> {
    op.check_hermitian()?;
    let basis = op.basis().clone();
    let herm = (op.matrix().clone() + op.matrix().adjoint()).scale(0.5);
    let (energies, mut vecs) = eigen::sorted_eigh(&herm);

    let parity = basis.parity_diagonal();
    let sz: Vec<f64> = basis.m_values().to_vec();
    for cluster in eigen::degenerate_clusters(&energies) {
        // parity is an exact symmetry and must refine first; Sz breaks the
        // remaining parity-degenerate ties and drives the ordering
        eigen::canonicalize_cluster(&mut vecs, cluster, &[&parity, &sz], &[&sz, &parity]);
    }

    let states = (0..basis.dim())
        .map(|k| {
            let col = DVector::<Complex64>::from_iterator(
                basis.dim(),
                vecs.column(k).iter().cloned(),
            );
            SymmetricState::normalized(basis.clone(), col)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Spectrum {
        basis,
        energies,
        states,
    })
}

/// Convenience: build and diagonalize in one step.
pub fn spectrum(params: &LmgParams) -> Result<Spectrum> {
    diagonalize(&hamiltonian(params)?)
}

/// Closed-form `gamma = 1` eigenenergy `E_m = (2/L) m^2 - 2 h m`.
pub fn gamma1_energy(m: f64, h: f64, l: usize) -> Result<f64> {
    let basis = DickeBasis::new(l)?;
    crate::dicke::m_index(&basis, m)?;
    Ok(2.0 / l as f64 * m * m - 2.0 * h * m)
}

/// Ground magnetization of the `gamma = 1` model: the ladder value in
/// `[-S, S]` nearest to `h L / 2`.
///
/// Exact half-way ties are broken toward the smaller `|m|`; at such fields
/// the two Dicke states are exactly degenerate, so sweeps should sample
/// off the tie points.
pub fn gamma1_ground_m(h: f64, l: usize) -> f64 {
    let s = l as f64 / 2.0;
    let target = h * l as f64 / 2.0;
    // ladder positions are target+S steps of 1 from -S
    let pos = target + s;
    let lo = pos.floor();
    let hi = pos.ceil();
    let m = if lo == hi {
        lo
    } else {
        let (dl, dh) = (pos - lo, hi - pos);
        if (dl - dh).abs() < 1e-15 {
            // tie: prefer the smaller |m|
            let (ml, mh) = (lo - s, hi - s);
            if ml.abs() <= mh.abs() {
                lo
            } else {
                hi
            }
        } else if dl < dh {
            lo
        } else {
            hi
        }
    } - s;
    m.clamp(-s, s)
}

/// A Gibbs thermal state over a spectrum.
#[derive(Debug, Clone)]
pub struct GibbsState {
    spectrum: Arc<Spectrum>,
    temperature: f64,
    weights: Vec<f64>,
    log_z: f64,
    rho: SymmetricDensityMatrix,
}

impl GibbsState {
    pub fn spectrum(&self) -> &Arc<Spectrum> {
        &self.spectrum
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    /// Normalized Boltzmann weights in spectrum order.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Log of the partition sum after the ground-energy shift.
    pub fn log_z(&self) -> f64 {
        self.log_z
    }

    pub fn rho(&self) -> &SymmetricDensityMatrix {
        &self.rho
    }
}

/// Build the Gibbs state at temperature `T >= 0`.
///
/// Weights are `exp(-(E_v - E_min)/T)` normalized; `T = 0` takes the
/// explicit uniform mixture over the numerically degenerate ground cluster
/// rather than a limit of exponentials.
pub fn gibbs_state(spectrum: Arc<Spectrum>, temperature: f64) -> Result<GibbsState> {
    if !(temperature >= 0.0) {
        return Err(Error::InvalidParam(format!(
            "temperature T = {temperature} must be >= 0"
        )));
    }
    let n = spectrum.len();
    let e0 = spectrum.ground_energy();
    let (weights, log_z) = if temperature == 0.0 {
        let cluster = spectrum.ground_cluster();
        let g = cluster.len().max(1);
        let mut w = vec![0.0; n];
        for i in cluster {
            w[i] = 1.0 / g as f64;
        }
        (w, (g as f64).ln())
    } else {
        let shifted: Vec<f64> = spectrum
            .energies()
            .iter()
            .map(|&e| -(e - e0) / temperature)
            .collect();
        let log_z = crate::numeric::log_sum_exp(&shifted);
        let w: Vec<f64> = shifted.iter().map(|&x| (x - log_z).exp()).collect();
        (w, log_z)
    };

    let dim = spectrum.basis().dim();
    let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
    for (v, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        let amp = spectrum.states()[v].amplitudes();
        for i in 0..dim {
            for j in 0..dim {
                rho[(i, j)] += amp[i] * amp[j].conj() * w;
            }
        }
    }
    let rho = (rho.clone() + rho.adjoint()).scale(0.5);
    let rho = SymmetricDensityMatrix::new(spectrum.basis().clone(), rho)?;
    Ok(GibbsState {
        spectrum,
        temperature,
        weights,
        log_z,
        rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dicke_overlap(state: &SymmetricState, m: f64) -> f64 {
        let idx = crate::dicke::m_index(state.basis(), m).unwrap();
        state.amplitudes()[idx].norm_sqr()
    }

    #[test]
    fn gamma1_hamiltonian_is_diagonal_up_to_constant() {
        // -(2/L)(Sx^2+Sy^2) = -(2/L)(S(S+1) - Sz^2): diagonal with
        // entries (2/L)m^2 - 2hm - const
        let params = LmgParams::new(6, 1.0, 0.7).unwrap();
        let h = hamiltonian(&params).unwrap();
        let basis = params.basis();
        let s = basis.spin();
        let shift = -2.0 / params.l as f64 * s * (s + 1.0);
        for i in 0..basis.dim() {
            for j in 0..basis.dim() {
                let got = h.matrix()[(i, j)];
                if i == j {
                    let m = basis.m_values()[i];
                    let expect = gamma1_energy(m, params.h, params.l).unwrap() + shift;
                    assert!((got.re - expect).abs() < 1e-12, "diag at m={m}");
                    assert!(got.im.abs() < 1e-13);
                } else {
                    assert!(got.norm() < 1e-12, "off-diagonal at ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn gamma0_l2_eigenvalues() {
        // -(2/L)Sx^2 for L=2: Sx^2 has spin-1 eigenvalues {0,1,1},
        // so the spectrum is {-1,-1,0} ascending (direct 3x3 oracle)
        let spec = spectrum(&LmgParams::new(2, 0.0, 0.0).unwrap()).unwrap();
        let e = spec.energies();
        assert!((e[0] + 1.0).abs() < 1e-12);
        assert!((e[1] + 1.0).abs() < 1e-12);
        assert!(e[2].abs() < 1e-12);
    }

    #[test]
    fn field_term_is_linear_in_h() {
        let l = 5;
        let h1 = hamiltonian(&LmgParams::new(l, -0.4, 0.3).unwrap()).unwrap();
        let h2 = hamiltonian(&LmgParams::new(l, -0.4, 0.3 + 0.25).unwrap()).unwrap();
        let basis = DickeBasis::new(l).unwrap();
        let sz = collective_ops(&basis).sz;
        let diff = h2.matrix() - h1.matrix() + sz.matrix().scale(2.0 * 0.25);
        assert!(diff.iter().all(|c| c.norm() < 1e-12));
    }

    #[test]
    fn gamma1_ground_state_is_dicke_m0() {
        let spec = spectrum(&LmgParams::new(4, 1.0, 0.0).unwrap()).unwrap();
        assert!(dicke_overlap(spec.ground_state(), 0.0) > 1.0 - 1e-12);
    }

    #[test]
    fn gamma1_ground_magnetization_at_half_field() {
        // minimize (2/L)m^2 - 2hm over the ladder: L=4, h=0.5 -> m=1
        let spec = spectrum(&LmgParams::new(4, 1.0, 0.5).unwrap()).unwrap();
        assert!(dicke_overlap(spec.ground_state(), 1.0) > 1.0 - 1e-12);
        assert_eq!(gamma1_ground_m(0.5, 4), 1.0);
    }

    #[test]
    fn eigenvalue_sum_matches_trace() {
        let params = LmgParams::new(9, -0.6, 0.8).unwrap();
        let h = hamiltonian(&params).unwrap();
        let spec = diagonalize(&h).unwrap();
        let trace: f64 = (0..h.basis().dim()).map(|i| h.matrix()[(i, i)].re).sum();
        let sum: f64 = spec.energies().iter().sum();
        assert!((sum - trace).abs() < 1e-10);
    }

    #[test]
    fn diagonalize_rejects_non_hermitian() {
        let basis = DickeBasis::new(3).unwrap();
        let mut m = DMatrix::<Complex64>::zeros(4, 4);
        m[(0, 1)] = Complex64::new(1.0, 0.0); // no conjugate partner
        let op = CollectiveOperator::new(basis, m).unwrap();
        assert!(matches!(diagonalize(&op), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn residuals_are_small() {
        let params = LmgParams::new(12, -1.0, 0.35).unwrap();
        let h = hamiltonian(&params).unwrap();
        let spec = diagonalize(&h).unwrap();
        for (v, state) in spec.states().iter().enumerate() {
            let r = h.matrix() * state.amplitudes()
                - state.amplitudes().scale(spec.energies()[v]);
            assert!(r.norm() < 1e-10, "residual of state {v}");
        }
    }

    #[test]
    fn gamma1_examples() {
        assert!((gamma1_energy(1.0, 0.5, 4).unwrap() + 0.5).abs() < 1e-15);
        assert_eq!(gamma1_energy(0.0, 2.3, 8).unwrap(), 0.0);
        // level crossing at h = 1/4 for L = 4
        let e0 = gamma1_energy(0.0, 0.25, 4).unwrap();
        let e1 = gamma1_energy(1.0, 0.25, 4).unwrap();
        assert!(e0.abs() < 1e-15 && e1.abs() < 1e-15);
        assert!(gamma1_energy(3.0, 0.0, 4).is_err());
    }

    #[test]
    fn ground_m_examples() {
        assert_eq!(gamma1_ground_m(0.0, 4), 0.0);
        assert_eq!(gamma1_ground_m(0.3, 4), 1.0);
        // saturation: h large pins m at S
        assert_eq!(gamma1_ground_m(0.8, 4), 2.0);
        assert_eq!(gamma1_ground_m(9.0, 4), 2.0);
        // odd L: half-integer ladder
        assert_eq!(gamma1_ground_m(0.0, 5), -0.5); // tie 0 -> nearest are +-1/2, equal |m|: lower first
        // exact tie at hL/2 = 0.5 for even L: toward smaller |m|
        assert_eq!(gamma1_ground_m(0.25, 4), 0.0);
    }

    #[test]
    fn gibbs_uniform_limit() {
        let spec = Arc::new(spectrum(&LmgParams::new(4, 1.0, 0.3).unwrap()).unwrap());
        let g = gibbs_state(spec, 1e9).unwrap();
        let dim = 5;
        for i in 0..dim {
            for j in 0..dim {
                let expect = if i == j { 1.0 / dim as f64 } else { 0.0 };
                assert!((g.rho().matrix()[(i, j)].re - expect).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn gibbs_zero_temperature_pure_ground() {
        let spec = Arc::new(spectrum(&LmgParams::new(4, 1.0, 0.0).unwrap()).unwrap());
        let g = gibbs_state(spec, 0.0).unwrap();
        // rho = |S,0><S,0|
        let idx = 2;
        for i in 0..5 {
            for j in 0..5 {
                let expect = if i == idx && j == idx { 1.0 } else { 0.0 };
                assert!((g.rho().matrix()[(i, j)].re - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gibbs_zero_temperature_degenerate_doublet() {
        // gamma=0, h=0: doubly degenerate ground -> rank-2 mixture, weights 1/2
        let spec = Arc::new(spectrum(&LmgParams::new(6, 0.0, 0.0).unwrap()).unwrap());
        let g = gibbs_state(spec.clone(), 0.0).unwrap();
        assert_eq!(spec.ground_cluster(), 0..2);
        let w: Vec<f64> = g.weights().iter().cloned().filter(|&w| w > 0.0).collect();
        assert_eq!(w, vec![0.5, 0.5]);
        assert!((g.log_z() - 2.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn gibbs_rejects_negative_temperature() {
        let spec = Arc::new(spectrum(&LmgParams::new(4, 1.0, 0.0).unwrap()).unwrap());
        assert!(gibbs_state(spec, -0.1).is_err());
    }

    #[test]
    fn gibbs_commutes_with_hamiltonian() {
        let params = LmgParams::new(8, -1.0, 0.45).unwrap();
        let h = hamiltonian(&params).unwrap();
        let spec = Arc::new(diagonalize(&h).unwrap());
        let g = gibbs_state(spec, 0.2).unwrap();
        let comm = g.rho().matrix() * h.matrix() - h.matrix() * g.rho().matrix();
        assert!(comm.iter().all(|c| c.norm() < 1e-10));
    }
}
