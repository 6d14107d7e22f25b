//! Gauss–Legendre and Gauss–Hermite rules by Newton iteration on the
//! three-term recurrences, with tensor products for boxes.

use crate::error::{Error, Result};
use crate::moments::{lebesgue_box_moments, standard_normal_moment};
use crate::scalar::Scalar;

/// Reference measures the oracle can integrate against.
#[derive(Debug, Clone, PartialEq)]
pub enum ReferenceMeasure<T> {
    LebesgueBox(Vec<(T, T)>),
    /// Standard Gaussian in `nvars` variables.
    Gaussian {
        nvars: usize,
    },
}

impl<T: Scalar> ReferenceMeasure<T> {
    pub fn nvars(&self) -> usize {
        match self {
            Self::LebesgueBox(b) => b.len(),
            Self::Gaussian { nvars } => *nvars,
        }
    }

    pub fn moments(&self, max_degree: u32) -> Result<crate::moments::MomentSequence<T>> {
        match self {
            Self::LebesgueBox(b) => lebesgue_box_moments(b, max_degree),
            Self::Gaussian { nvars } => Ok(crate::moments::gaussian_moments(max_degree, *nvars)),
        }
    }
}

/// Tensor-product rule: `∫ f dμ ≈ Σ_k w_k f(x_k)` exactly for every polynomial
/// whose degree in each variable is at most `exactness_degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule<T> {
    pub nodes: Vec<Vec<T>>,
    pub weights: Vec<T>,
    pub exactness_degree: u32,
}

/// Nodes ascending on [-1, 1] and weights, in f64.
pub(crate) fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut pp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (1.0, 0.0);
            for j in 1..=n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf - 1.0) * z * p2 - (jf - 1.0) * p3) / jf;
            }
            pp = nf * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-16 {
                break;
            }
        }
        if n % 2 == 1 && i == n / 2 {
            z = 0.0;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Nodes ascending and weights for the standard normal density.
pub(crate) fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    // Physicists' weight exp(-t²) with orthonormal recurrence, then t = x/√2.
    const PIM4: f64 = 0.751_125_544_464_942_5;
    let nf = n as f64;
    let mut t = vec![0.0; n];
    let mut w = vec![0.0; n];
    let mut z: f64 = 0.0;
    for i in 0..n.div_ceil(2) {
        z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-0.16667),
            1 => z - 1.14 * nf.powf(0.426) / z,
            2 => 1.86 * z - 0.86 * t[0],
            3 => 1.91 * z - 0.91 * t[1],
            _ => 2.0 * z - t[i - 2],
        };
        let mut pp = 1.0;
        for _ in 0..100 {
            let (mut p1, mut p2) = (PIM4, 0.0);
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
            }
            pp = (2.0 * nf).sqrt() * p2;
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() <= 1e-15 * z.abs().max(1.0) {
                break;
            }
        }
        if n % 2 == 1 && i == n / 2 {
            z = 0.0;
        }
        t[i] = z;
        t[n - 1 - i] = -z;
        let wi = 2.0 / (pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    let sqrt_pi = std::f64::consts::PI.sqrt();
    let sqrt2 = std::f64::consts::SQRT_2;
    let mut x: Vec<f64> = t.iter().rev().map(|&v| v * sqrt2).collect();
    let mut wr: Vec<f64> = w.iter().rev().map(|&v| v / sqrt_pi).collect();
    if n % 2 == 1 {
        x[n / 2] = 0.0;
    }
    // Ascending already after reversal; keep symmetric weights exact.
    for i in 0..n / 2 {
        let avg = 0.5 * (wr[i] + wr[n - 1 - i]);
        wr[i] = avg;
        wr[n - 1 - i] = avg;
    }
    (x, wr)
}

/// Checks a 1-D rule against closed-form moments up to degree `2n − 1`.
fn validate(x: &[f64], w: &[f64], exact: impl Fn(u32) -> f64) -> Result<()> {
    let degree = 2 * x.len() as u32 - 1;
    for k in 0..=degree {
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        for (&xi, &wi) in x.iter().zip(w) {
            let term = wi * xi.powi(k as i32);
            sum += term;
            abs_sum += term.abs();
        }
        let err = (sum - exact(k)).abs();
        if err > 1e-12 * abs_sum.max(1.0) {
            return Err(Error::QuadratureValidation {
                nodes: x.len(),
                degree: k,
                error: err,
            });
        }
    }
    Ok(())
}

impl<T: Scalar> QuadratureRule<T> {
    /// Tensor Gauss rule with `nodes_per_axis` points per variable.
    pub fn new(measure: &ReferenceMeasure<T>, nodes_per_axis: usize) -> Result<Self> {
        let n = nodes_per_axis.max(1);
        let axes: Vec<(Vec<f64>, Vec<f64>)> = match measure {
            ReferenceMeasure::LebesgueBox(bounds) => {
                let (x, w) = gauss_legendre(n);
                validate(&x, &w, |k| {
                    if k % 2 == 1 {
                        0.0
                    } else {
                        2.0 / f64::from(k + 1)
                    }
                })?;
                let mut axes = Vec::with_capacity(bounds.len());
                for (var, &(lo, hi)) in bounds.iter().enumerate() {
                    let (lo, hi) = (lo.as_f64(), hi.as_f64());
                    if !(lo < hi) {
                        return Err(Error::DegenerateInterval { var, lo, hi });
                    }
                    let half = 0.5 * (hi - lo);
                    axes.push((
                        x.iter().map(|&t| lo + half * (t + 1.0)).collect(),
                        w.iter().map(|&v| v * half).collect(),
                    ));
                }
                axes
            }
            ReferenceMeasure::Gaussian { nvars } => {
                let (x, w) = gauss_hermite(n);
                validate(&x, &w, standard_normal_moment::<f64>)?;
                vec![(x, w); *nvars]
            }
        };
        let dims = axes.len();
        let total = n.pow(dims as u32);
        let mut nodes = Vec::with_capacity(total);
        let mut weights = Vec::with_capacity(total);
        let mut counter = vec![0usize; dims];
        for _ in 0..total {
            let point = (0..dims).map(|d| T::of(axes[d].0[counter[d]])).collect();
            let weight = (0..dims).fold(1.0, |acc, d| acc * axes[d].1[counter[d]]);
            nodes.push(point);
            weights.push(T::of(weight));
            for d in (0..dims).rev() {
                counter[d] += 1;
                if counter[d] < n {
                    break;
                }
                counter[d] = 0;
            }
        }
        Ok(Self {
            nodes,
            weights,
            exactness_degree: 2 * n as u32 - 1,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Sum in node order.
    pub fn integrate(&self, mut f: impl FnMut(&[T]) -> T) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .fold(T::zero(), |acc, (x, &w)| acc + w * f(x))
    }
}
