use crate::error::Result;
use crate::linalg::eigh;
use crate::matrices::SymMatrix;
use crate::scalar::Scalar;

/// Largest κ the bisection will bracket before declaring infeasibility.
pub const BISECT_CAP: f64 = 1e12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BisectOutcome<T> {
    Feasible(T),
    Infeasible,
}

impl<T: Copy> BisectOutcome<T> {
    pub fn kappa(&self) -> Option<T> {
        match self {
            Self::Feasible(k) => Some(*k),
            Self::Infeasible => None,
        }
    }
}

/// Least κ with `κA − B ⪰ 0` by bisection on the sign of `λ_min(κA − B)`.
///
/// Both matrices are first scaled by `D = diag(A)^{-1/2}` (κ is invariant
/// under the congruence). A trial κ is accepted when
/// `λ_min ≥ −8·eps·dim·(κ‖A‖ + ‖B‖)`, the eigensolver's own error scale, so
/// a genuine null-space violation of fixed size stays visible up to the cap.
/// The bracket grows geometrically from 1 to [`BISECT_CAP`]; the returned κ
/// is the feasible end of an interval of width at most `tol · max(1, κ)`.
pub fn bisect_kappa<T: Scalar>(
    a: &SymMatrix<T>,
    b: &SymMatrix<T>,
    tol: T,
) -> Result<BisectOutcome<T>> {
    let n = a.dim();
    let d: Vec<T> = (0..n)
        .map(|i| {
            let v = a.get(i, i);
            if v > T::zero() {
                T::one() / v.sqrt()
            } else {
                T::one()
            }
        })
        .collect();
    let a = SymMatrix::from_fn(n, |i, j| d[i] * a.get(i, j) * d[j]);
    let b = SymMatrix::from_fn(n, |i, j| d[i] * b.get(i, j) * d[j]);
    let dim = T::of(n.max(1) as f64);
    let (norm_a, norm_b) = (a.max_abs() * dim, b.max_abs() * dim);
    let slack = T::of(8.0) * T::epsilon() * dim;
    let feasible = |k: T| -> Result<bool> {
        let tau = slack * (k * norm_a + norm_b);
        Ok(eigh(&a.combine(k, &b, -T::one())?)?.min() >= -tau)
    };
    if feasible(T::zero())? {
        return Ok(BisectOutcome::Feasible(T::zero()));
    }
    let cap = T::of(BISECT_CAP);
    let mut lo = T::zero();
    let mut hi = T::one();
    while !feasible(hi)? {
        lo = hi;
        hi *= T::of(2.0);
        if hi > cap {
            return Ok(BisectOutcome::Infeasible);
        }
    }
    while hi - lo > tol * T::one().max(hi) {
        let mid = T::of(0.5) * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(BisectOutcome::Feasible(hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_ratio() {
        let a = SymMatrix::<f64>::diagonal(&[1.0, 2.0]);
        let b = SymMatrix::diagonal(&[3.0, 1.0]);
        let k = bisect_kappa(&a, &b, 1e-12).unwrap().kappa().unwrap();
        assert!((k - 3.0).abs() < 1e-10);
    }

    #[test]
    fn null_direction_is_infeasible() {
        let a = SymMatrix::diagonal(&[1.0, 0.0]);
        let b = SymMatrix::diagonal(&[1.0, 1.0]);
        assert_eq!(
            bisect_kappa(&a, &b, 1e-10).unwrap(),
            BisectOutcome::Infeasible
        );
    }

    #[test]
    fn zero_b_gives_zero() {
        let a = SymMatrix::<f64>::identity(3);
        let b = SymMatrix::zeros(3);
        assert_eq!(
            bisect_kappa(&a, &b, 1e-10).unwrap(),
            BisectOutcome::Feasible(0.0)
        );
    }
}
