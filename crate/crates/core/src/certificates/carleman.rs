use serde::Serialize;

use crate::error::{Error, Result};
use crate::moments::MomentSequence;
use crate::poly::MultiIndex;
use crate::scalar::Scalar;

/// Partial sums `S_i(K) = Σ_{k=1..K} L_z(x_i^{2k})^{−1/(2k)}` for every
/// coordinate. Divergence as `K → ∞` is the Carleman condition; a finite
/// truncation can only display the trend.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CarlemanDiagnostic<T> {
    pub kmax: u32,
    /// `partial_sums[i][k-1] = S_i(k)`.
    pub partial_sums: Vec<Vec<T>>,
}

impl<T: Scalar> CarlemanDiagnostic<T> {
    /// `S_i(kmax)` per variable.
    pub fn totals(&self) -> Vec<T> {
        self.partial_sums
            .iter()
            .map(|s| s.last().copied().unwrap_or_else(T::zero))
            .collect()
    }
}

pub fn carleman_partial_sums<T: Scalar>(
    z: &MomentSequence<T>,
    kmax: u32,
) -> Result<CarlemanDiagnostic<T>> {
    let n = z.nvars();
    if 2 * kmax > z.max_degree() {
        let mut e = vec![0; n];
        if let Some(first) = e.first_mut() {
            *first = 2 * kmax;
        }
        return Err(Error::MissingMoment {
            alpha: MultiIndex::new(e),
            max_degree: z.max_degree(),
        });
    }
    let mut partial_sums = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = T::zero();
        let mut sums = Vec::with_capacity(kmax as usize);
        for k in 1..=kmax {
            let mut e = vec![0; n];
            e[i] = 2 * k;
            let m = z.get(&MultiIndex::new(e))?;
            if !(m > T::zero()) || !m.is_finite() {
                return Err(Error::NonpositiveEvenMoment {
                    var: i + 1,
                    power: 2 * k,
                    value: m.as_f64(),
                });
            }
            acc += m.powf(-T::one() / T::of(f64::from(2 * k)));
            sums.push(acc);
        }
        partial_sums.push(sums);
    }
    Ok(CarlemanDiagnostic { kmax, partial_sums })
}
