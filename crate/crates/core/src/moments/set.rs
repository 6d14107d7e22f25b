use crate::error::{Error, Result};
use crate::poly::SparsePoly;
use crate::scalar::Scalar;

/// Basic semialgebraic set `K = {x : g_j(x) ≥ 0}` together with the
/// hypotheses the caller asserts about its description.
///
/// The flags are never verified: `normalized` asserts `0 ≤ g_j ≤ 1` on K,
/// `generates_algebra` asserts that `1, g_1, ..., g_m` generate `R[X]`, and
/// `putinar_ok` asserts that some `N − ‖X‖²` lies in the quadratic module.
#[derive(Debug, Clone, PartialEq)]
pub struct SemialgebraicSet<T> {
    nvars: usize,
    generators: Vec<SparsePoly<T>>,
    pub normalized: bool,
    pub generates_algebra: bool,
    pub putinar_ok: bool,
}

impl<T: Scalar> SemialgebraicSet<T> {
    pub fn new(nvars: usize, generators: Vec<SparsePoly<T>>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(Error::VariableCount {
                expected: nvars,
                found: g.nvars(),
            });
        }
        Ok(Self {
            nvars,
            generators,
            normalized: false,
            generates_algebra: false,
            putinar_ok: false,
        })
    }

    /// No generators: only `g_∅ ≡ 1` remains.
    pub fn whole_space(nvars: usize) -> Self {
        Self {
            nvars,
            generators: Vec::new(),
            normalized: false,
            generates_algebra: false,
            putinar_ok: false,
        }
    }

    /// The box `Π [lo_i, hi_i]` described by the normalized affine generators
    /// `(x_i − lo_i)/(hi_i − lo_i)` and `(hi_i − x_i)/(hi_i − lo_i)`, with all
    /// three hypothesis flags set.
    pub fn box_set(bounds: &[(T, T)]) -> Result<Self> {
        let n = bounds.len();
        let mut generators = Vec::with_capacity(2 * n);
        for (i, &(lo, hi)) in bounds.iter().enumerate() {
            if !(lo < hi) {
                return Err(Error::DegenerateInterval {
                    var: i,
                    lo: lo.as_f64(),
                    hi: hi.as_f64(),
                });
            }
            let w = hi - lo;
            let x = SparsePoly::var(n, i);
            let lower = x.sub(&SparsePoly::constant(n, lo))?.scale(T::one() / w);
            let upper = SparsePoly::constant(n, hi).sub(&x)?.scale(T::one() / w);
            generators.push(lower);
            generators.push(upper);
        }
        Ok(Self {
            nvars: n,
            generators,
            normalized: true,
            generates_algebra: true,
            putinar_ok: true,
        })
    }

    pub fn with_flags(
        mut self,
        normalized: bool,
        generates_algebra: bool,
        putinar_ok: bool,
    ) -> Self {
        self.normalized = normalized;
        self.generates_algebra = generates_algebra;
        self.putinar_ok = putinar_ok;
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[SparsePoly<T>] {
        &self.generators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }
}
