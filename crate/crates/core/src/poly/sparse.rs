use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::MultiIndex;

/// Coefficients below this magnitude are treated as exact zeros.
const ZERO_THRESHOLD: f64 = 1e-300;

/// Multivariate polynomial stored as a sparse map from exponent vector to
/// coefficient. Terms iterate in graded-lex order and no zero coefficient is
/// ever stored.
#[derive(Clone, PartialEq)]
pub struct SparsePoly<T> {
    nvars: usize,
    terms: BTreeMap<MultiIndex, T>,
}

fn negligible<T: Scalar>(c: T) -> bool {
    c == T::zero() || c.abs() < T::of(ZERO_THRESHOLD)
}

impl<T: Scalar> SparsePoly<T> {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        Self::monomial(MultiIndex::zero(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    /// The coordinate polynomial `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(nvars, i), T::one())
    }

    pub fn monomial(alpha: MultiIndex, c: T) -> Self {
        let nvars = alpha.nvars();
        let mut p = Self::zero(nvars);
        if !negligible(c) {
            p.terms.insert(alpha, c);
        }
        p
    }

    /// Builds a polynomial from `(α, c)` pairs, summing repeated indices.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, T)>,
    {
        let mut p = Self::zero(nvars);
        for (alpha, c) in terms {
            if alpha.nvars() != nvars {
                return Err(Error::VariableCount {
                    expected: nvars,
                    found: alpha.nvars(),
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Total degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> i64 {
        self.terms
            .keys()
            .map(|a| a.degree() as i64)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> T {
        self.terms.get(alpha).copied().unwrap_or_else(T::zero)
    }

    /// Terms in graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, T)> + '_ {
        self.terms.iter().map(|(a, &c)| (a, c))
    }

    fn add_term(&mut self, alpha: MultiIndex, c: T) {
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                if !negligible(c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = *o.get() + c;
                if negligible(s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::VariableCount {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_nvars(other)?;
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_term(a.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-T::one()))
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in self.terms() {
            out.add_term(a.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        poly_mul(self, other)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        for _ in 0..e {
            acc = poly_mul(&acc, self).expect("same variable count");
        }
        acc
    }

    /// Evaluates at a point of length `nvars`.
    pub fn eval(&self, point: &[T]) -> T {
        self.terms()
            .fold(T::zero(), |acc, (a, c)| acc + c * a.eval(point))
    }
}

/// Exact term-wise product of two polynomials in the same variables.
pub fn poly_mul<T: Scalar>(p: &SparsePoly<T>, q: &SparsePoly<T>) -> Result<SparsePoly<T>> {
    p.check_nvars(q)?;
    let mut out = SparsePoly::zero(p.nvars);
    for (a, ca) in p.terms() {
        for (b, cb) in q.terms() {
            out.add_term(a.add(b), ca * cb);
        }
    }
    Ok(out)
}

impl<T: fmt::Debug> fmt::Debug for SparsePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

impl<T: Scalar> fmt::Display for SparsePoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (a, c)) in self.terms().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (i, &e) in a.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = SparsePoly<f64>;

    fn x() -> P {
        P::var(1, 0)
    }

    #[test]
    fn difference_of_squares() {
        let one = P::one(1);
        let p = one.add(&x()).unwrap();
        let q = one.sub(&x()).unwrap();
        let got = poly_mul(&p, &q).unwrap();
        let want = one.sub(&x().pow(2)).unwrap();
        assert_eq!(got, want);
        assert_eq!(got.num_terms(), 2);
    }

    #[test]
    fn identity_element() {
        let p = P::from_terms(
            2,
            [
                (MultiIndex::new(vec![1, 2]), 3.0),
                (MultiIndex::new(vec![0, 0]), -1.5),
            ],
        )
        .unwrap();
        assert_eq!(poly_mul(&p, &P::one(2)).unwrap(), p);
    }

    #[test]
    fn binomial_square() {
        let s = P::var(2, 0).add(&P::var(2, 1)).unwrap();
        let sq = poly_mul(&s, &s).unwrap();
        assert_eq!(sq.coeff(&MultiIndex::new(vec![2, 0])), 1.0);
        assert_eq!(sq.coeff(&MultiIndex::new(vec![1, 1])), 2.0);
        assert_eq!(sq.coeff(&MultiIndex::new(vec![0, 2])), 1.0);
        assert_eq!(sq.num_terms(), 3);
    }

    #[test]
    fn mismatch_is_an_error() {
        let err = poly_mul(&P::one(1), &P::one(2)).unwrap_err();
        assert!(matches!(err, Error::VariableCount { .. }));
    }

    #[test]
    fn zero_degree_convention() {
        assert_eq!(P::zero(3).degree(), -1);
        assert_eq!(P::one(3).degree(), 0);
        let cancelled = x().sub(&x()).unwrap();
        assert!(cancelled.is_zero());
        assert_eq!(P::monomial(MultiIndex::new(vec![4]), 0.0).num_terms(), 0);
    }

    #[test]
    fn eval_and_generic_f32() {
        let p: SparsePoly<f32> = SparsePoly::one(1).sub(&SparsePoly::var(1, 0)).unwrap();
        assert_eq!(p.eval(&[0.25f32]), 0.75);
        assert_eq!(x().pow(3).eval(&[0.5]), 0.125);
    }
}
