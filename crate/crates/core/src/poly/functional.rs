use crate::error::Result;
use crate::moments::MomentSequence;
use crate::scalar::Scalar;

use super::SparsePoly;

/// `L_y(f) = Σ_α f_α y_α`, summed in graded-lex term order.
pub fn apply_functional<T: Scalar>(y: &MomentSequence<T>, f: &SparsePoly<T>) -> Result<T> {
    y.check_nvars(f.nvars())?;
    let mut acc = T::zero();
    for (alpha, c) in f.terms() {
        acc += c * y.get(alpha)?;
    }
    Ok(acc)
}
