//! Collective-spin algebra in the fixed-S symmetric sector.
//!
//! `L` spin-1/2 particles span a `(L+1)`-dimensional permutation-symmetric
//! sector with total spin `S = L/2`. Basis states are the Dicke states
//! `|S, m>` with `m = -S, ..., S`, ordered ascending in `m` throughout the
//! crate, so the GHZ coherence of a density matrix is always its
//! (last row, first column) corner element.
//!
//! Rotations are `exp(-i theta . S)`, built by eigendecomposition of the
//! Hermitian generator so unitarity holds to solver precision. The Wigner-d
//! matrix at `pi/2` follows the convention
//! `exp(+i (pi/2) Sy) |S,m> = sum_m' d_{m;m'} |S,m'>`,
//! i.e. `d_{m;m'} = <S,m' | exp(+i (pi/2) Sy) | S,m>`; with this convention
//! `|d_{m;+-S}| = sqrt(C(L, m + L/2)) / 2^(L/2)`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::eigen;
use crate::{Error, Result};

/// Hermiticity verification bound for flagged operators.
pub const HERMITICITY_TOL: f64 = 1e-12;

/// The symmetric sector of `L` spin-1/2 particles.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeBasis {
    l: usize,
    m_values: Vec<f64>,
}

impl DickeBasis {
    /// Build the basis for `L >= 2` particles.
    pub fn new(l: usize) -> Result<Self> {
        if l < 2 {
            return Err(Error::InvalidParam(format!(
                "particle count L = {l} must be at least 2"
            )));
        }
        let s = l as f64 / 2.0;
        let m_values = (0..=l).map(|i| -s + i as f64).collect();
        Ok(Self { l, m_values })
    }

    /// Particle count `L`.
    pub fn particle_count(&self) -> usize {
        self.l
    }

    /// Total spin `S = L/2` (half-integer for odd `L`).
    pub fn spin(&self) -> f64 {
        self.l as f64 / 2.0
    }

    /// Sector dimension `L + 1`.
    pub fn dim(&self) -> usize {
        self.l + 1
    }

    /// Magnetization labels `-S, -S+1, ..., S` in basis order.
    pub fn m_values(&self) -> &[f64] {
        &self.m_values
    }

    /// Diagonal of the spin-flip parity operator, `(-1)^(S - m)`.
    ///
    /// This is `sigma_z^(tensor L)` restricted to the symmetric sector; it
    /// commutes with every Hamiltonian built in this crate and is used to
    /// canonicalize degenerate subspaces.
    pub fn parity_diagonal(&self) -> Vec<f64> {
        (0..=self.l)
            .map(|i| if (self.l - i) % 2 == 0 { 1.0 } else { -1.0 })
            .collect()
    }
}

/// A dense operator on the symmetric sector, rows/columns in `m` order.
#[derive(Debug, Clone)]
pub struct CollectiveOperator {
    basis: DickeBasis,
    matrix: DMatrix<Complex64>,
}

impl CollectiveOperator {
    /// Wrap a matrix after checking its dimension against the basis.
    pub fn new(basis: DickeBasis, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: matrix.nrows(),
            });
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> &DickeBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// Max elementwise deviation from Hermiticity.
    pub fn hermitian_deviation(&self) -> f64 {
        eigen::hermitian_deviation(&self.matrix)
    }

    /// Verify Hermiticity to [`HERMITICITY_TOL`] (scaled by the matrix size).
    pub fn check_hermitian(&self) -> Result<()> {
        let scale = self
            .matrix
            .iter()
            .fold(0.0f64, |m, c| m.max(c.norm()))
            .max(1.0);
        let dev = self.hermitian_deviation();
        if dev > HERMITICITY_TOL * scale {
            return Err(Error::NonHermitian { deviation: dev });
        }
        Ok(())
    }

    /// Max elementwise deviation from unitarity.
    pub fn unitary_deviation(&self) -> f64 {
        let n = self.matrix.nrows();
        let prod = &self.matrix * self.matrix.adjoint();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j { 1.0 } else { 0.0 };
                dev = dev.max((prod[(i, j)] - Complex64::new(expected, 0.0)).norm());
            }
        }
        dev
    }
}

/// The standard set of collective operators on a basis.
pub struct CollectiveOps {
    pub sx: CollectiveOperator,
    pub sy: CollectiveOperator,
    pub sz: CollectiveOperator,
    pub splus: CollectiveOperator,
    pub sminus: CollectiveOperator,
}

/// Build `Sx, Sy, Sz, S+, S-`.
///
/// `Sz` is diagonal with entries `m`; `S+` carries the single band
/// `<S,m+1|S+|S,m> = sqrt((S-m)(S+m+1))`; `Sx = (S+ + S-)/2` and
/// `Sy = (S+ - S-)/(2i)`.
pub fn collective_ops(basis: &DickeBasis) -> CollectiveOps {
    let dim = basis.dim();
    let s = basis.spin();
    let mut sz = DMatrix::<Complex64>::zeros(dim, dim);
    let mut splus = DMatrix::<Complex64>::zeros(dim, dim);
    for (i, &m) in basis.m_values().iter().enumerate() {
        sz[(i, i)] = Complex64::new(m, 0.0);
        if i + 1 < dim {
            let c = ((s - m) * (s + m + 1.0)).sqrt();
            splus[(i + 1, i)] = Complex64::new(c, 0.0);
        }
    }
    let sminus = splus.adjoint();
    let sx = (&splus + &sminus).scale(0.5);
    let sy = (&splus - &sminus).scale(0.5) * Complex64::new(0.0, -1.0);
    let wrap = |m: DMatrix<Complex64>| CollectiveOperator {
        basis: basis.clone(),
        matrix: m,
    };
    CollectiveOps {
        sx: wrap(sx),
        sy: wrap(sy),
        sz: wrap(sz),
        splus: wrap(splus),
        sminus: wrap(sminus),
    }
}

/// Unitary rotation `exp(-i theta . S)` via eigendecomposition of the
/// Hermitian generator `theta . S`.
pub fn rotation_operator(basis: &DickeBasis, theta: &[f64; 3]) -> Result<CollectiveOperator> {
    if theta.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidParam(format!(
            "rotation angles must be finite, got {theta:?}"
        )));
    }
    let ops = collective_ops(basis);
    let gen = ops.sx.matrix.scale(theta[0])
        + ops.sy.matrix.scale(theta[1])
        + ops.sz.matrix.scale(theta[2]);
    Ok(CollectiveOperator {
        basis: basis.clone(),
        matrix: unitary_from_generator(&gen),
    })
}

/// `exp(-i G)` for Hermitian `G`, exactly unitary up to solver precision.
fn unitary_from_generator(gen: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (vals, vecs) = eigen::sorted_eigh(gen);
    let dim = gen.nrows();
    let phases = DVector::<Complex64>::from_iterator(
        dim,
        vals.iter().map(|&l| Complex64::new(0.0, -l).exp()),
    );
    let mut scaled = vecs.clone();
    for (k, col) in (0..dim).enumerate() {
        let p = phases[k];
        for i in 0..dim {
            scaled[(i, col)] *= p;
        }
    }
    scaled * vecs.adjoint()
}

/// Euler z-y-z rotation `Rz(phi) Ry(beta) Rz(psi)` (rightmost applied first).
pub fn euler_rotation(
    basis: &DickeBasis,
    phi: f64,
    beta: f64,
    psi: f64,
) -> Result<CollectiveOperator> {
    let rz_phi = z_rotation(basis, phi);
    let ry = rotation_operator(basis, &[0.0, beta, 0.0])?;
    let rz_psi = z_rotation(basis, psi);
    Ok(CollectiveOperator {
        basis: basis.clone(),
        matrix: rz_phi * ry.matrix() * rz_psi,
    })
}

/// Diagonal `Rz(angle) = exp(-i angle Sz)`.
fn z_rotation(basis: &DickeBasis, angle: f64) -> DMatrix<Complex64> {
    let dim = basis.dim();
    DMatrix::<Complex64>::from_fn(dim, dim, |i, j| {
        if i == j {
            Complex64::new(0.0, -angle * basis.m_values()[i]).exp()
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Wigner-d matrix at `pi/2`: `d[m_row][m'_col] = <S,m'|exp(+i pi/2 Sy)|S,m>`.
///
/// `exp(+i (pi/2) Sy)` is real orthogonal (`i Sy` is a real matrix), so the
/// result is exactly the transpose of that rotation matrix; rows are
/// orthonormal.
pub fn wigner_d_half_pi(basis: &DickeBasis) -> DMatrix<f64> {
    // exp(+i (pi/2) Sy) = exp(-i theta . S) with theta_y = -pi/2
    let u = rotation_operator(basis, &[0.0, -std::f64::consts::FRAC_PI_2, 0.0])
        .expect("finite angles");
    let dim = basis.dim();
    // element (m', m) of u is <S,m'|U|S,m>; d_{m;m'} transposes that
    DMatrix::<f64>::from_fn(dim, dim, |row_m, col_mp| u.matrix()[(col_mp, row_m)].re)
}

/// A normalized pure state of the symmetric sector.
#[derive(Debug, Clone)]
pub struct SymmetricState {
    basis: DickeBasis,
    amplitudes: DVector<Complex64>,
}

impl SymmetricState {
    /// Wrap amplitudes, requiring unit norm to 1e-12.
    pub fn new(basis: DickeBasis, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: amplitudes.len(),
            });
        }
        let norm_sq: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParam(format!(
                "state norm^2 = {norm_sq} deviates from 1 by more than 1e-12"
            )));
        }
        Ok(Self { basis, amplitudes })
    }

    /// Normalize and wrap.
    pub fn normalized(basis: DickeBasis, amplitudes: DVector<Complex64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParam("cannot normalize the zero vector".into()));
        }
        Self::new(basis, amplitudes.scale(1.0 / norm))
    }

    /// The Dicke state `|S, m>`.
    pub fn dicke(basis: DickeBasis, m: f64) -> Result<Self> {
        let idx = m_index(&basis, m)?;
        let mut amp = DVector::<Complex64>::zeros(basis.dim());
        amp[idx] = Complex64::new(1.0, 0.0);
        Self::new(basis, amp)
    }

    /// The GHZ state `(|S,S> + |S,-S>)/sqrt(2)`.
    pub fn ghz(basis: DickeBasis) -> Self {
        let dim = basis.dim();
        let mut amp = DVector::<Complex64>::zeros(dim);
        let r = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amp[0] = r;
        amp[dim - 1] = r;
        Self { basis, amplitudes: amp }
    }

    pub fn basis(&self) -> &DickeBasis {
        &self.basis
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    /// Magnetization `<Sz>`.
    pub fn mean_sz(&self) -> f64 {
        self.amplitudes
            .iter()
            .zip(self.basis.m_values())
            .map(|(c, &m)| c.norm_sqr() * m)
            .sum()
    }

    /// The rank-one density matrix `|psi><psi|`.
    pub fn density_matrix(&self) -> SymmetricDensityMatrix {
        let dim = self.basis.dim();
        let mut rho = DMatrix::<Complex64>::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                rho[(i, j)] = self.amplitudes[i] * self.amplitudes[j].conj();
            }
        }
        SymmetricDensityMatrix {
            basis: self.basis.clone(),
            matrix: rho,
        }
    }
}

/// Index of magnetization `m` in a basis, rejecting off-ladder values.
pub fn m_index(basis: &DickeBasis, m: f64) -> Result<usize> {
    let s = basis.spin();
    let pos = m + s;
    let idx = pos.round();
    if (pos - idx).abs() > 1e-9 || idx < 0.0 || idx > basis.particle_count() as f64 {
        return Err(Error::InvalidParam(format!(
            "m = {m} is not on the ladder -S..S for L = {}",
            basis.particle_count()
        )));
    }
    Ok(idx as usize)
}

/// A density matrix on the symmetric sector.
#[derive(Debug, Clone)]
pub struct SymmetricDensityMatrix {
    basis: DickeBasis,
    matrix: DMatrix<Complex64>,
}

impl SymmetricDensityMatrix {
    /// Wrap a matrix, requiring Hermiticity and unit trace to 1e-12.
    ///
    /// Positivity is not checked here (it costs a full eigendecomposition);
    /// use [`SymmetricDensityMatrix::min_eigenvalue`] where it matters.
    pub fn new(basis: DickeBasis, matrix: DMatrix<Complex64>) -> Result<Self> {
        if matrix.nrows() != basis.dim() || matrix.ncols() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: matrix.nrows(),
            });
        }
        let dev = eigen::hermitian_deviation(&matrix);
        if dev > 1e-12 {
            return Err(Error::NonHermitian { deviation: dev });
        }
        let trace: Complex64 = (0..matrix.nrows()).map(|i| matrix[(i, i)]).sum();
        if (trace.re - 1.0).abs() > 1e-12 || trace.im.abs() > 1e-12 {
            return Err(Error::InvalidParam(format!(
                "trace = {trace} deviates from 1 by more than 1e-12"
            )));
        }
        Ok(Self { basis, matrix })
    }

    pub fn basis(&self) -> &DickeBasis {
        &self.basis
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// Smallest eigenvalue; physical states satisfy `>= -1e-10`.
    pub fn min_eigenvalue(&self) -> f64 {
        let (vals, _) = eigen::sorted_eigh(&self.matrix);
        vals[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_rejects_single_spin() {
        assert!(DickeBasis::new(1).is_err());
        assert!(DickeBasis::new(0).is_err());
    }

    #[test]
    fn basis_labels_ascend_with_unit_step() {
        let b = DickeBasis::new(5).unwrap();
        assert_eq!(b.dim(), 6);
        assert_eq!(b.m_values()[0], -2.5);
        assert_eq!(*b.m_values().last().unwrap(), 2.5);
        for w in b.m_values().windows(2) {
            assert!((w[1] - w[0] - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn splus_band_l4() {
        // <S,-1|S+|S,-2> = sqrt((S-m)(S+m+1)) with S=2, m=-2 -> 2.0
        let b = DickeBasis::new(4).unwrap();
        let ops = collective_ops(&b);
        assert!((ops.splus.matrix()[(1, 0)].re - 2.0).abs() < 1e-15);
    }

    #[test]
    fn splus_annihilates_top_of_ladder() {
        for l in [3usize, 6, 11] {
            let b = DickeBasis::new(l).unwrap();
            let ops = collective_ops(&b);
            let dim = b.dim();
            // <S,S|S+|S,S-1> = sqrt(L)
            assert!(
                (ops.splus.matrix()[(dim - 1, dim - 2)].re - (l as f64).sqrt()).abs() < 1e-12
            );
            // S+|S,S> = 0: the top column is empty
            for i in 0..dim {
                assert_eq!(ops.splus.matrix()[(i, dim - 1)], Complex64::new(0.0, 0.0));
            }
        }
    }

    #[test]
    fn sz_diagonal_l2() {
        let b = DickeBasis::new(2).unwrap();
        let ops = collective_ops(&b);
        for (i, expect) in [-1.0, 0.0, 1.0].iter().enumerate() {
            assert_eq!(ops.sz.matrix()[(i, i)].re, *expect);
        }
    }

    #[test]
    fn zero_rotation_is_identity() {
        let b = DickeBasis::new(6).unwrap();
        let u = rotation_operator(&b, &[0.0, 0.0, 0.0]).unwrap();
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((u.matrix()[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn two_pi_rotation_sign_follows_parity_of_l() {
        // 2*pi rotation in SU(2): identity for integer S (even L),
        // minus identity for half-integer S (odd L)
        for (l, sign) in [(4usize, 1.0), (5usize, -1.0)] {
            let b = DickeBasis::new(l).unwrap();
            let u = rotation_operator(&b, &[0.0, 2.0 * std::f64::consts::PI, 0.0]).unwrap();
            for i in 0..b.dim() {
                for j in 0..b.dim() {
                    let expect = if i == j { sign } else { 0.0 };
                    assert!((u.matrix()[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn half_pi_y_rotation_on_single_effective_spin() {
        // L=2 top state rotated by pi/2 about y spreads into the binomial
        // profile; for the effective spin the amplitudes are (1/2, 1/sqrt2, 1/2)
        let b = DickeBasis::new(2).unwrap();
        let u = rotation_operator(&b, &[0.0, std::f64::consts::FRAC_PI_2, 0.0]).unwrap();
        let top = 2usize;
        let a: Vec<f64> = (0..3).map(|i| u.matrix()[(i, top)].norm()).collect();
        assert!((a[0] - 0.5).abs() < 1e-12);
        assert!((a[1] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((a[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn rotation_composition_inverts() {
        let b = DickeBasis::new(7).unwrap();
        let theta = [0.4, -1.1, 2.3];
        let u = rotation_operator(&b, &theta).unwrap();
        let v = rotation_operator(&b, &[-theta[0], -theta[1], -theta[2]]).unwrap();
        let prod = u.matrix() * v.matrix();
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((prod[(i, j)] - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn rotation_is_unitary() {
        let b = DickeBasis::new(9).unwrap();
        let u = rotation_operator(&b, &[0.3, 0.7, -0.2]).unwrap();
        assert!(u.unitary_deviation() < 1e-12);
    }

    #[test]
    fn rotation_rejects_nonfinite_angles() {
        let b = DickeBasis::new(4).unwrap();
        assert!(rotation_operator(&b, &[f64::NAN, 0.0, 0.0]).is_err());
        assert!(rotation_operator(&b, &[0.0, f64::INFINITY, 0.0]).is_err());
    }

    #[test]
    fn wigner_d_edge_elements_follow_binomial() {
        // |d_{m;S}(pi/2)| = sqrt(C(L, m+L/2)) / 2^(L/2)
        for l in [1usize, 4, 9, 16] {
            if l < 2 {
                continue;
            }
            let b = DickeBasis::new(l).unwrap();
            let d = wigner_d_half_pi(&b);
            let dim = b.dim();
            for (i, &m) in b.m_values().iter().enumerate() {
                let k = (m + b.spin()).round() as u64;
                let expect =
                    (0.5 * crate::numeric::ln_binomial(l as u64, k) - 0.5 * l as f64 * 2.0f64.ln())
                        .exp();
                assert!(
                    (d[(i, dim - 1)].abs() - expect).abs() < 1e-12,
                    "L={l} m={m}"
                );
                assert!((d[(i, 0)].abs() - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn wigner_d_l4_center_to_edge() {
        // |d_{0;S}(pi/2)| = sqrt(6)/4
        let b = DickeBasis::new(4).unwrap();
        let d = wigner_d_half_pi(&b);
        assert!((d[(2, 4)].abs() - 6.0f64.sqrt() / 4.0).abs() < 1e-12);
    }

    #[test]
    fn wigner_d_rows_orthonormal() {
        let b = DickeBasis::new(12).unwrap();
        let d = wigner_d_half_pi(&b);
        let dim = b.dim();
        for r1 in 0..dim {
            for r2 in 0..dim {
                let dot: f64 = (0..dim).map(|c| d[(r1, c)] * d[(r2, c)]).sum();
                let expect = if r1 == r2 { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn state_norm_enforced() {
        let b = DickeBasis::new(2).unwrap();
        let amp = DVector::from_vec(vec![
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.5, 0.0),
        ]);
        assert!(SymmetricState::new(b.clone(), amp.clone()).is_err());
        assert!(SymmetricState::normalized(b, amp).is_ok());
    }

    #[test]
    fn density_matrix_trace_and_hermiticity_enforced() {
        let b = DickeBasis::new(2).unwrap();
        let bad = DMatrix::<Complex64>::identity(3, 3); // trace 3
        assert!(SymmetricDensityMatrix::new(b.clone(), bad).is_err());
        let rho = SymmetricState::dicke(b, 0.0).unwrap().density_matrix();
        assert!(rho.min_eigenvalue() > -1e-14);
    }
}
