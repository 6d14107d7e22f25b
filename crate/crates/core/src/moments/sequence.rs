use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{basis_size, MonomialBasis, MultiIndex};
use crate::scalar::Scalar;

/// Truncated moment sequence `(y_α)_{|α| ≤ max_degree}`.
///
/// Always complete: every index of total degree at most `max_degree` has a
/// value. Sequences are never normalized to unit mass.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentSequence<T> {
    nvars: usize,
    max_degree: u32,
    moments: BTreeMap<MultiIndex, T>,
    label: String,
}

impl<T: Scalar> MomentSequence<T> {
    pub fn from_fn<F>(nvars: usize, max_degree: u32, label: impl Into<String>, mut f: F) -> Self
    where
        F: FnMut(&MultiIndex) -> T,
    {
        let moments = MonomialBasis::new(nvars, max_degree)
            .indices()
            .iter()
            .map(|a| (a.clone(), f(a)))
            .collect();
        Self {
            nvars,
            max_degree,
            moments,
            label: label.into(),
        }
    }

    /// Validates the complete-shell invariant on an explicit map.
    pub fn from_map(
        nvars: usize,
        max_degree: u32,
        label: impl Into<String>,
        moments: BTreeMap<MultiIndex, T>,
    ) -> Result<Self> {
        for alpha in moments.keys() {
            if alpha.nvars() != nvars {
                return Err(Error::VariableCount {
                    expected: nvars,
                    found: alpha.nvars(),
                });
            }
            if alpha.degree() > max_degree {
                return Err(Error::IndexOutOfShell {
                    alpha: alpha.clone(),
                    max_degree,
                });
            }
        }
        if moments.len() != basis_size(nvars, max_degree) {
            let missing = MonomialBasis::new(nvars, max_degree)
                .indices()
                .iter()
                .find(|a| !moments.contains_key(a))
                .cloned()
                .expect("fewer entries than the basis implies a missing index");
            return Err(Error::IncompleteShell(missing));
        }
        if let Some((a, _)) = moments.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteMoment(a.clone()));
        }
        Ok(Self {
            nvars,
            max_degree,
            moments,
            label: label.into(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn set_label(&mut self, label: impl Into<String>) {
        self.label = label.into();
    }

    pub fn len(&self) -> usize {
        self.moments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moments.is_empty()
    }

    pub fn mass(&self) -> T {
        self.moments[&MultiIndex::zero(self.nvars)]
    }

    pub fn get(&self, alpha: &MultiIndex) -> Result<T> {
        self.moments
            .get(alpha)
            .copied()
            .ok_or_else(|| Error::MissingMoment {
                alpha: alpha.clone(),
                max_degree: self.max_degree,
            })
    }

    /// Entries in graded-lex order.
    pub fn iter(&self) -> impl Iterator<Item = (&MultiIndex, T)> + '_ {
        self.moments.iter().map(|(a, &v)| (a, v))
    }

    pub(crate) fn check_nvars(&self, nvars: usize) -> Result<()> {
        if nvars != self.nvars {
            return Err(Error::VariableCount {
                expected: self.nvars,
                found: nvars,
            });
        }
        Ok(())
    }

    pub fn scale(&self, c: T) -> Self {
        self.map(|v| v * c)
    }

    pub fn map(&self, mut f: impl FnMut(T) -> T) -> Self {
        Self {
            nvars: self.nvars,
            max_degree: self.max_degree,
            moments: self
                .moments
                .iter()
                .map(|(a, &v)| (a.clone(), f(v)))
                .collect(),
            label: self.label.clone(),
        }
    }

    /// `a·self + b·other`, over the common truncation degree.
    pub fn combine(&self, a: T, other: &Self, b: T) -> Result<Self> {
        self.check_nvars(other.nvars)?;
        let d = self.max_degree.min(other.max_degree);
        Ok(Self::from_fn(self.nvars, d, self.label.clone(), |alpha| {
            a * self.moments[alpha] + b * other.moments[alpha]
        }))
    }

    /// Drops every moment above degree `d`.
    pub fn truncate(&self, d: u32) -> Self {
        let d = d.min(self.max_degree);
        Self {
            nvars: self.nvars,
            max_degree: d,
            moments: self
                .moments
                .iter()
                .filter(|(a, _)| a.degree() <= d)
                .map(|(a, &v)| (a.clone(), v))
                .collect(),
            label: self.label.clone(),
        }
    }

    pub fn cast<U: Scalar>(&self) -> MomentSequence<U> {
        MomentSequence {
            nvars: self.nvars,
            max_degree: self.max_degree,
            moments: self
                .moments
                .iter()
                .map(|(a, &v)| (a.clone(), U::of(v.as_f64())))
                .collect(),
            label: self.label.clone(),
        }
    }
}
