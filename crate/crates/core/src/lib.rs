//! Collective-spin toolkit for many-body Bell correlations in
//! Lipkin-Meshkov-Glick (LMG) spin-1/2 chains.
//!
//! The crate is organized around the symmetric (maximum total spin) sector
//! of `L` spin-1/2 particles and a full `2^L` engine for models without
//! permutation symmetry:
//!
//! - [`dicke`]: the `(L+1)`-dimensional Dicke basis, collective spin
//!   operators, SU(2) rotations, and Wigner-d matrices at `pi/2`;
//! - [`lmg`]: LMG Hamiltonians, exact diagonalization with deterministic
//!   degeneracy handling, closed-form `gamma = 1` spectrum, Gibbs states;
//! - [`bell`]: the symmetrized many-body Bell correlator (GHZ coherence),
//!   its optimization over rotation angles, and depth classification;
//! - [`oracles`]: closed-form cross-checks — binomial and Gaussian
//!   coherences, the thermal interference sum, the Gaussian-integral
//!   envelope, the critical temperature, the Sx-basis tridiagonal form of
//!   the `gamma = 0` model, and the effective double-well potential;
//! - [`lattice`]: dense `2^L` Hamiltonians with distance-dependent
//!   couplings, per-spin Bell optimization, and disorder ensembles;
//! - [`checks`]: the runtime invariant suite behind `spinbell validate`.

pub mod bell;
pub mod checks;
pub mod dicke;
mod eigen;
pub mod lattice;
pub mod lmg;
pub mod numeric;
pub mod optim;
pub mod oracles;

use std::fmt;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A constructor or operation received an argument outside its domain.
    InvalidParam(String),
    /// A matrix expected to be Hermitian deviated by more than the stated bound.
    NonHermitian { deviation: f64 },
    /// Vector/matrix dimensions do not match the basis.
    DimensionMismatch { expected: usize, got: usize },
    /// Dense-engine size guard (the full-space engine is capped at `L <= 14`).
    SizeGuard { l: usize, max: usize },
    /// The requested quantity is not well defined for the given inputs.
    IllDefined(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidParam(msg) => write!(f, "invalid parameter: {msg}"),
            Error::NonHermitian { deviation } => {
                write!(f, "matrix is not Hermitian (max deviation {deviation:.3e})")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::SizeGuard { l, max } => {
                write!(f, "L = {l} exceeds the dense-engine guard L <= {max}")
            }
            Error::IllDefined(msg) => write!(f, "ill-defined: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
