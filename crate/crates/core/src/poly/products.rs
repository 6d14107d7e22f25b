//! Products of the set generators: `g_J` over subsets and `g^α (1−g)^β`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::{poly_mul, MultiIndex, SparsePoly};

fn common_nvars<T: Scalar>(g: &[SparsePoly<T>], fallback: usize) -> Result<usize> {
    let n = g.first().map_or(fallback, SparsePoly::nvars);
    if let Some(bad) = g.iter().find(|p| p.nvars() != n) {
        return Err(Error::VariableCount {
            expected: n,
            found: bad.nvars(),
        });
    }
    Ok(n)
}

/// `g_J = Π_{j∈J} g_j` with zero-based generator indices; `g_∅ = 1`.
///
/// `nvars` is only consulted when `g` is empty.
pub fn subset_product<T: Scalar>(
    g: &[SparsePoly<T>],
    subset: &[usize],
    nvars: usize,
) -> Result<SparsePoly<T>> {
    let n = common_nvars(g, nvars)?;
    let mut acc = SparsePoly::one(n);
    for &j in subset {
        let gj = g.get(j).ok_or(Error::GeneratorCount {
            expected: g.len(),
            found: j + 1,
        })?;
        acc = poly_mul(&acc, gj)?;
    }
    Ok(acc)
}

/// Generator indices selected by bit `j` of `mask`.
pub fn mask_to_subset(mask: u64, m: usize) -> Vec<usize> {
    (0..m).filter(|&j| mask >> j & 1 == 1).collect()
}

/// `Π_j g_j^{α_j} · Π_j (1 − g_j)^{β_j}`, with one exponent per generator.
pub fn power_product<T: Scalar>(
    g: &[SparsePoly<T>],
    alpha: &MultiIndex,
    beta: &MultiIndex,
    nvars: usize,
) -> Result<SparsePoly<T>> {
    for e in [alpha, beta] {
        if e.nvars() != g.len() {
            return Err(Error::GeneratorCount {
                expected: g.len(),
                found: e.nvars(),
            });
        }
    }
    let n = common_nvars(g, nvars)?;
    let one = SparsePoly::one(n);
    let mut acc = one.clone();
    for (j, gj) in g.iter().enumerate() {
        let a = alpha.exponents()[j];
        let b = beta.exponents()[j];
        if a > 0 {
            acc = poly_mul(&acc, &gj.pow(a))?;
        }
        if b > 0 {
            acc = poly_mul(&acc, &one.sub(gj)?.pow(b))?;
        }
    }
    Ok(acc)
}
