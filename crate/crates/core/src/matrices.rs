//! Dense symmetric matrices and the moment / localizing matrix builders.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::MomentSequence;
use crate::poly::{MonomialBasis, MultiIndex, SparsePoly};
use crate::scalar::Scalar;

/// Real symmetric matrix in packed lower-triangle storage.
///
/// Matrices produced by [`localizing_matrix`] carry the monomial basis that
/// labels their rows and columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    dim: usize,
    lower: Vec<T>,
    basis: Option<MonomialBasis>,
}

#[inline]
fn packed(i: usize, j: usize) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    i * (i + 1) / 2 + j
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            lower: vec![T::zero(); dim * (dim + 1) / 2],
            basis: None,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn diagonal(d: &[T]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i] } else { T::zero() })
    }

    /// `f` is called once per lower-triangle entry `(i, j)` with `i ≥ j`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut lower = Vec::with_capacity(dim * (dim + 1) / 2);
        for i in 0..dim {
            for j in 0..=i {
                lower.push(f(i, j));
            }
        }
        Self {
            dim,
            lower,
            basis: None,
        }
    }

    /// Reads the lower triangle of a square row-major array.
    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let dim = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch(dim, r.len()));
        }
        Ok(Self::from_fn(dim, |i, j| rows[i][j]))
    }

    pub fn with_basis(mut self, basis: MonomialBasis) -> Self {
        assert_eq!(basis.len(), self.dim, "basis size must equal dimension");
        self.basis = Some(basis);
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> Option<&MonomialBasis> {
        self.basis.as_ref()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.lower[packed(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.lower[packed(i, j)] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn max_abs(&self) -> T {
        self.lower.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn scale(&self, c: T) -> Self {
        Self {
            dim: self.dim,
            lower: self.lower.iter().map(|&v| v * c).collect(),
            basis: self.basis.clone(),
        }
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(Self {
            dim: self.dim,
            lower: self
                .lower
                .iter()
                .zip(&other.lower)
                .map(|(&x, &y)| a * x + b * y)
                .collect(),
            basis: self.basis.clone(),
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    /// `vᵀ A v`.
    pub fn quad_form(&self, v: &[T]) -> T {
        self.mul_vec(v).iter().zip(v).map(|(&a, &b)| a * b).sum()
    }

    /// `Qᵀ A Q` for a dense `dim × k` matrix stored column-wise.
    pub fn congruence(&self, cols: &[Vec<T>]) -> Self {
        let images: Vec<Vec<T>> = cols.iter().map(|c| self.mul_vec(c)).collect();
        Self::from_fn(cols.len(), |i, j| {
            cols[i].iter().zip(&images[j]).map(|(&a, &b)| a * b).sum()
        })
    }
}

impl<T: Scalar + Serialize> SymMatrix<T> {
    /// Row-major, fully filled JSON array.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_rows()).expect("finite matrix serializes")
    }
}

/// Degree of `θ` for level bookkeeping; the zero polynomial counts as 0.
fn shift_degree<T: Scalar>(theta: &SparsePoly<T>) -> i64 {
    theta.degree().max(0)
}

/// Largest `r` with `2r + deg θ ≤ max_degree`, or −1 when none exists.
pub fn max_level<T: Scalar>(y: &MomentSequence<T>, theta: &SparsePoly<T>) -> i64 {
    let room = i64::from(y.max_degree()) - shift_degree(theta);
    if room < 0 {
        -1
    } else {
        room / 2
    }
}

/// Localizing matrix `M_r(θy)` with entries `L_y(x^{α+β} θ)` over the
/// degree-`r` monomial basis; `θ ≡ 1` gives the moment matrix `M_r(y)`.
///
/// Entries depend only on `α + β` and are computed once per distinct sum,
/// accumulating θ's terms in graded-lex order.
pub fn localizing_matrix<T: Scalar>(
    y: &MomentSequence<T>,
    theta: &SparsePoly<T>,
    r: u32,
) -> Result<SymMatrix<T>> {
    if theta.nvars() != y.nvars() {
        return Err(Error::VariableCount {
            expected: y.nvars(),
            found: theta.nvars(),
        });
    }
    if i64::from(r) > max_level(y, theta) {
        let need = 2 * r + shift_degree(theta) as u32;
        let mut e = vec![0; y.nvars()];
        if let Some(first) = e.first_mut() {
            *first = need;
        }
        return Err(Error::MissingMoment {
            alpha: MultiIndex::new(e),
            max_degree: y.max_degree(),
        });
    }
    let basis = MonomialBasis::new(y.nvars(), r);
    let idx = basis.indices();
    let mut cache: HashMap<MultiIndex, T> = HashMap::new();
    let mut lower = Vec::with_capacity(idx.len() * (idx.len() + 1) / 2);
    for i in 0..idx.len() {
        for j in 0..=i {
            let s = idx[i].add(&idx[j]);
            let v = match cache.get(&s) {
                Some(&v) => v,
                None => {
                    let mut acc = T::zero();
                    for (gamma, c) in theta.terms() {
                        acc += c * y.get(&s.add(gamma))?;
                    }
                    cache.insert(s, acc);
                    acc
                }
            };
            lower.push(v);
        }
    }
    Ok(SymMatrix {
        dim: idx.len(),
        lower,
        basis: Some(basis),
    })
}

/// Moment matrix `M_r(y)`.
pub fn moment_matrix<T: Scalar>(y: &MomentSequence<T>, r: u32) -> Result<SymMatrix<T>> {
    localizing_matrix(y, &SparsePoly::one(y.nvars()), r)
}
