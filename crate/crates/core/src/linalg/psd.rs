use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::matrices::SymMatrix;
use crate::scalar::Scalar;

use super::eigh;

/// Numerical tolerances shared by the PSD test and the κ kernel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TolPolicy {
    /// `A ⪰ 0` accepts `λ_min ≥ −rel_tol · max(1, ρ(A))`; also the base of the
    /// scalar tolerance used by linear constraint checks.
    pub rel_tol: f64,
    /// Eigenvalues of the diagonally scaled reference matrix at or below
    /// `rank_tol · max(1, λ_max) · dim` are treated as null.
    pub rank_tol: f64,
}

impl TolPolicy {
    /// `rel_tol`, floored at a small multiple of the scalar's epsilon.
    pub fn rel<T: Scalar>(&self) -> T {
        T::of(self.rel_tol).max(T::epsilon() * T::of(16.0))
    }

    /// `rank_tol`, floored at a small multiple of the scalar's epsilon.
    pub fn rank<T: Scalar>(&self) -> T {
        T::of(self.rank_tol).max(T::epsilon() * T::of(16.0))
    }
}

impl Default for TolPolicy {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            rank_tol: 1e-13,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsdCheck<T> {
    pub psd: bool,
    pub min_eigenvalue: T,
    pub threshold: T,
}

pub fn is_psd<T: Scalar>(a: &SymMatrix<T>, tol: &TolPolicy) -> Result<PsdCheck<T>> {
    let eig = eigh(a)?;
    let threshold = tol.rel::<T>() * T::one().max(eig.spectral_radius());
    let min_eigenvalue = eig.min();
    Ok(PsdCheck {
        psd: min_eigenvalue >= -threshold,
        min_eigenvalue,
        threshold,
    })
}
