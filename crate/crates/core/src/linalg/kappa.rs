//! Least `κ ≥ 0` with `κA − B ⪰ 0`, solved as a generalized symmetric
//! eigenproblem restricted to the numerical range of `A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrices::SymMatrix;
use crate::scalar::Scalar;

use super::{eigh, TolPolicy};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum KappaStatus {
    Finite,
    Infeasible,
    Zero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KappaResult<T> {
    pub status: KappaStatus,
    /// Set for `Finite` (and `Zero`, as 0).
    pub kappa: Option<T>,
    /// Unit direction in the null space of `A` along which `B` is positive.
    pub witness: Option<Vec<T>>,
    /// `(vᵀAv, vᵀBv)` for the witness.
    pub witness_forms: Option<(T, T)>,
    /// A null direction of `A` carried a positive `B`-form below the rank
    /// threshold and was accepted as feasible.
    pub borderline: bool,
    /// Numerical rank of `A` used for the range restriction.
    pub rank: usize,
}

impl<T: Scalar> KappaResult<T> {
    pub fn is_feasible(&self) -> bool {
        self.status != KappaStatus::Infeasible
    }
}

/// Least `κ ≥ 0` with `κA − B ⪰ 0`.
///
/// Both matrices are first scaled by the congruence `D = diag(A)^{-1/2}`,
/// which leaves κ unchanged. Eigenvectors of the scaled `A` with eigenvalue
/// at most `τ = rank_tol · max(1, λ_max) · dim` span its numerical null
/// space; a null direction on which `B` exceeds `τ` makes the problem
/// infeasible. Otherwise κ is the top eigenvalue of `B` reduced to the range
/// of `A`: through a Cholesky factor when `A` has full numerical rank, and
/// through `D_r^{-1/2} U_rᵀ B U_r D_r^{-1/2}` otherwise.
pub fn min_kappa<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    tol: &TolPolicy,
) -> Result<KappaResult<T>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch(n, b.dim()));
    }
    if b.max_abs() < T::min_positive_value() {
        return Ok(KappaResult {
            status: KappaStatus::Zero,
            kappa: Some(T::zero()),
            witness: None,
            witness_forms: None,
            borderline: false,
            rank: n,
        });
    }

    let scale = equilibration(a);
    let a_s = SymMatrix::from_fn(n, |i, j| a.get(i, j) * scale[i] * scale[j]);
    let b_s = SymMatrix::from_fn(n, |i, j| b.get(i, j) * scale[i] * scale[j]);

    let eig = eigh(&a_s)?;
    let tau_rank = tol.rank::<T>() * T::one().max(eig.max()) * T::of(n as f64);

    let mut range = Vec::new();
    let mut worst: Option<(usize, T)> = None;
    for (k, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda > tau_rank {
            range.push(k);
            continue;
        }
        let q = b_s.quad_form(&eig.eigenvectors[k]);
        if worst.is_none_or(|(_, w)| q > w) {
            worst = Some((k, q));
        }
    }

    let mut borderline = false;
    if let Some((k, q)) = worst {
        if q > tau_rank {
            let mut v: Vec<T> = eig.eigenvectors[k]
                .iter()
                .zip(&scale)
                .map(|(&x, &s)| x * s)
                .collect();
            let norm = v.iter().map(|&x| x * x).sum::<T>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
            let forms = (a.quad_form(&v), b.quad_form(&v));
            return Ok(KappaResult {
                status: KappaStatus::Infeasible,
                kappa: None,
                witness: Some(v),
                witness_forms: Some(forms),
                borderline: false,
                rank: range.len(),
            });
        }
        borderline = q > T::zero();
    }

    let full_rank = range.len() == n;
    let kappa = match full_rank.then(|| cholesky_reduced(&a_s, &b_s)).flatten() {
        Some(s) => eigh(&s)?.max(),
        None if range.is_empty() => T::zero(),
        None => {
            let cols: Vec<Vec<T>> = range
                .iter()
                .map(|&k| {
                    let s = eig.eigenvalues[k].sqrt().recip();
                    eig.eigenvectors[k].iter().map(|&x| x * s).collect()
                })
                .collect();
            eigh(&b_s.congruence(&cols))?.max()
        }
    };
    Ok(KappaResult {
        status: KappaStatus::Finite,
        kappa: Some(kappa.max(T::zero())),
        witness: None,
        witness_forms: None,
        borderline,
        rank: range.len(),
    })
}

/// Diagonal scaling `diag(A)^{-1/2}`; entries with a negligible diagonal keep
/// scale 1.
fn equilibration<T: Scalar>(a: &SymMatrix<T>) -> Vec<T> {
    let dmax = (0..a.dim()).map(|i| a.get(i, i)).fold(T::zero(), T::max);
    (0..a.dim())
        .map(|i| {
            let d = a.get(i, i);
            if d > dmax * T::epsilon() {
                d.sqrt().recip()
            } else {
                T::one()
            }
        })
        .collect()
}

/// `L^{-1} B L^{-T}` for `A = L Lᵀ`; `None` if the factorization breaks down.
fn cholesky_reduced<T: Scalar>(a: &SymMatrix<T>, b: &SymMatrix<T>) -> Option<SymMatrix<T>> {
    let n = a.dim();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = a.get(i, j);
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if !(s > T::zero()) {
                    return None;
                }
                l[i][i] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    // W = L^{-1} B, one forward solve per column.
    let mut w = b.to_rows();
    for c in 0..n {
        for i in 0..n {
            let mut s = w[i][c];
            for k in 0..i {
                s -= l[i][k] * w[k][c];
            }
            w[i][c] = s / l[i][i];
        }
    }
    // S = W L^{-T}, one forward solve per row of W.
    for row in w.iter_mut() {
        for i in 0..n {
            let mut s = row[i];
            for k in 0..i {
                s -= l[i][k] * row[k];
            }
            row[i] = s / l[i][i];
        }
    }
    let half = T::of(0.5);
    Some(SymMatrix::from_fn(n, |i, j| (w[i][j] + w[j][i]) * half))
}
