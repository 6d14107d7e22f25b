//! Closed-form moments of the built-in reference measures.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

use super::MomentSequence;

/// Tensor-product Lebesgue moments of the box `Π_i [lo_i, hi_i]`.
pub fn lebesgue_box_moments<T: Scalar>(
    bounds: &[(T, T)],
    max_degree: u32,
) -> Result<MomentSequence<T>> {
    for (var, &(lo, hi)) in bounds.iter().enumerate() {
        if !(lo < hi) {
            return Err(Error::DegenerateInterval {
                var,
                lo: lo.as_f64(),
                hi: hi.as_f64(),
            });
        }
    }
    let per_axis: Vec<Vec<T>> = bounds
        .iter()
        .map(|&(lo, hi)| {
            (0..=max_degree)
                .map(|k| {
                    let e = k as i32 + 1;
                    (hi.powi(e) - lo.powi(e)) / T::of(f64::from(k + 1))
                })
                .collect()
        })
        .collect();
    let label = bounds
        .iter()
        .map(|(lo, hi)| format!("[{lo},{hi}]"))
        .collect::<Vec<_>>()
        .join("x");
    Ok(MomentSequence::from_fn(
        bounds.len(),
        max_degree,
        format!("lebesgue {label}"),
        |alpha| {
            alpha
                .exponents()
                .iter()
                .enumerate()
                .fold(T::one(), |acc, (i, &e)| acc * per_axis[i][e as usize])
        },
    ))
}

/// Moment of order `k` of the standard normal distribution: `(k−1)!!` for even
/// `k`, zero for odd `k`.
pub fn standard_normal_moment<T: Scalar>(k: u32) -> T {
    if k % 2 == 1 {
        return T::zero();
    }
    let mut m = T::one();
    let mut j = 1;
    while j < k {
        m *= T::of(f64::from(j));
        j += 2;
    }
    m
}

/// Product standard-Gaussian moments in `nvars` variables.
pub fn gaussian_moments<T: Scalar>(max_degree: u32, nvars: usize) -> MomentSequence<T> {
    let table: Vec<T> = (0..=max_degree).map(standard_normal_moment).collect();
    MomentSequence::from_fn(nvars, max_degree, format!("gaussian n={nvars}"), |alpha| {
        alpha
            .exponents()
            .iter()
            .fold(T::one(), |acc, &e| acc * table[e as usize])
    })
}

/// Moments `y_α = p^α` of the unit point mass at `p`.
pub fn dirac_moments<T: Scalar>(point: &[T], max_degree: u32) -> MomentSequence<T> {
    let label = point
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",");
    MomentSequence::from_fn(
        point.len(),
        max_degree,
        format!("dirac at ({label})"),
        |alpha| alpha.eval(point),
    )
}
