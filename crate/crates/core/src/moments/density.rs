use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::scalar::Scalar;

/// Constant value on an axis-aligned box.
#[derive(Debug, Clone, PartialEq)]
pub struct BoxPiece<T> {
    pub bounds: Vec<(T, T)>,
    pub value: T,
}

impl<T: Scalar> BoxPiece<T> {
    pub fn contains(&self, point: &[T]) -> bool {
        self.bounds
            .iter()
            .zip(point)
            .all(|(&(lo, hi), &x)| lo <= x && x <= hi)
    }
}

pub type DensityFn<T> = Arc<dyn Fn(&[T]) -> T + Send + Sync>;

/// A known density `h` used to synthesize test sequences `y_α = ∫ x^α h dμ`.
#[derive(Clone)]
pub enum DensitySpec<T> {
    Polynomial(SparsePoly<T>),
    /// Sum of box pieces; overlapping pieces add up.
    PiecewiseConstant {
        nvars: usize,
        pieces: Vec<BoxPiece<T>>,
    },
    /// Arbitrary pointwise density; integrated by quadrature only.
    Function {
        nvars: usize,
        name: String,
        f: DensityFn<T>,
    },
}

impl<T: Scalar> DensitySpec<T> {
    pub fn constant(nvars: usize, c: T) -> Self {
        Self::Polynomial(SparsePoly::constant(nvars, c))
    }

    pub fn function(
        nvars: usize,
        name: impl Into<String>,
        f: impl Fn(&[T]) -> T + Send + Sync + 'static,
    ) -> Self {
        Self::Function {
            nvars,
            name: name.into(),
            f: Arc::new(f),
        }
    }

    pub fn box_indicator(bounds: Vec<(T, T)>, scale: T) -> Result<Self> {
        for (var, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo < hi) {
                return Err(Error::DegenerateInterval {
                    var,
                    lo: lo.as_f64(),
                    hi: hi.as_f64(),
                });
            }
        }
        Ok(Self::PiecewiseConstant {
            nvars: bounds.len(),
            pieces: vec![BoxPiece {
                bounds,
                value: scale,
            }],
        })
    }

    pub fn nvars(&self) -> usize {
        match self {
            Self::Polynomial(p) => p.nvars(),
            Self::PiecewiseConstant { nvars, .. } | Self::Function { nvars, .. } => *nvars,
        }
    }

    pub fn eval(&self, point: &[T]) -> T {
        match self {
            Self::Polynomial(p) => p.eval(point),
            Self::PiecewiseConstant { pieces, .. } => pieces
                .iter()
                .filter(|p| p.contains(point))
                .fold(T::zero(), |acc, p| acc + p.value),
            Self::Function { f, .. } => f(point),
        }
    }
}

impl<T: Scalar> fmt::Debug for DensitySpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Polynomial(p) => write!(f, "Polynomial({p})"),
            Self::PiecewiseConstant { pieces, .. } => write!(f, "PiecewiseConstant({pieces:?})"),
            Self::Function { name, .. } => write!(f, "Function({name})"),
        }
    }
}
