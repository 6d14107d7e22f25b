use crate::error::{Error, Result};
use crate::moments::{BoxPiece, DensitySpec, MomentSequence};
use crate::poly::MultiIndex;
use crate::scalar::Scalar;

use super::quadrature::{QuadratureRule, ReferenceMeasure};

/// Nodes per axis for densities given only pointwise.
pub const DEFAULT_FUNCTION_NODES: usize = 64;

/// Moments of `h·μ` plus sampling diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Synthesized<T> {
    pub moments: MomentSequence<T>,
    /// Quadrature nodes (or pieces) where `h < 0`. Nonzero means the fixture
    /// is not a valid density; the moments are still returned.
    pub negative_samples: usize,
    pub min_sample: T,
    /// Rule size used, `None` for exact piecewise integration.
    pub nodes_per_axis: Option<usize>,
}

pub fn quadrature_moments<T: Scalar>(
    h: &DensitySpec<T>,
    measure: &ReferenceMeasure<T>,
    max_degree: u32,
) -> Result<Synthesized<T>> {
    quadrature_moments_with(h, measure, max_degree, None)
}

/// `y_α = ∫ x^α h dμ` for `|α| ≤ max_degree`.
///
/// Polynomial densities get a rule exact for `max_degree + deg h`; pointwise
/// densities use `nodes` (default [`DEFAULT_FUNCTION_NODES`]) per axis.
/// Piecewise-constant densities are integrated exactly box by box.
pub fn quadrature_moments_with<T: Scalar>(
    h: &DensitySpec<T>,
    measure: &ReferenceMeasure<T>,
    max_degree: u32,
    nodes: Option<usize>,
) -> Result<Synthesized<T>> {
    let nvars = measure.nvars();
    if h.nvars() != nvars {
        return Err(Error::VariableCount {
            expected: nvars,
            found: h.nvars(),
        });
    }
    let label = format!("{h:?}");
    let n = match h {
        DensitySpec::PiecewiseConstant { pieces, .. } => {
            return piecewise(pieces, measure, max_degree, label)
        }
        DensitySpec::Polynomial(p) => {
            let needed = max_degree + p.degree().max(0) as u32;
            let minimal = (needed as usize + 2) / 2;
            match nodes {
                Some(k) if 2 * k < needed as usize + 1 => {
                    return Err(Error::InsufficientExactness {
                        needed,
                        available: (2 * k).saturating_sub(1) as u32,
                    })
                }
                Some(k) => k,
                None => minimal.max(1),
            }
        }
        DensitySpec::Function { .. } => nodes.unwrap_or(DEFAULT_FUNCTION_NODES),
    };
    let rule = QuadratureRule::new(measure, n)?;
    let mut sums = vec![T::zero(); crate::poly::basis_size(nvars, max_degree)];
    let basis = crate::poly::MonomialBasis::new(nvars, max_degree);
    let mut negative = 0;
    let mut min_sample = T::infinity();
    let d = max_degree as usize;
    let mut powers = vec![vec![T::one(); d + 1]; nvars];
    for (x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let hx = h.eval(x);
        if hx < T::zero() {
            negative += 1;
        }
        min_sample = min_sample.min(hx);
        for (v, row) in powers.iter_mut().enumerate() {
            for k in 1..=d {
                row[k] = row[k - 1] * x[v];
            }
        }
        let wh = w * hx;
        for (s, alpha) in sums.iter_mut().zip(basis.indices()) {
            let mono = alpha
                .exponents()
                .iter()
                .enumerate()
                .fold(T::one(), |acc, (v, &e)| acc * powers[v][e as usize]);
            *s += wh * mono;
        }
    }
    let mut it = sums.into_iter();
    let moments = MomentSequence::from_fn(nvars, max_degree, label, |_| {
        it.next().expect("one sum per index")
    });
    Ok(Synthesized {
        moments,
        negative_samples: negative,
        min_sample,
        nodes_per_axis: Some(n),
    })
}

/// `∫_a^b x^k dμ_1` for k = 0..=d, one-dimensional factor of the measure.
fn interval_moments(a: f64, b: f64, d: usize, gaussian: bool) -> Vec<f64> {
    let mut out = vec![0.0; d + 1];
    if !(a < b) {
        return out;
    }
    if gaussian {
        let phi = |x: f64| (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt();
        let cdf = |x: f64| 0.5 * (1.0 + libm::erf(x / std::f64::consts::SQRT_2));
        // I_k = [-x^{k-1} φ]_a^b + (k-1) I_{k-2}
        out[0] = cdf(b) - cdf(a);
        if d >= 1 {
            out[1] = phi(a) - phi(b);
        }
        for k in 2..=d {
            let edge = a.powi(k as i32 - 1) * phi(a) - b.powi(k as i32 - 1) * phi(b);
            out[k] = edge + (k as f64 - 1.0) * out[k - 2];
        }
    } else {
        for (k, o) in out.iter_mut().enumerate() {
            let p = k as i32 + 1;
            *o = (b.powi(p) - a.powi(p)) / f64::from(p);
        }
    }
    out
}

fn piecewise<T: Scalar>(
    pieces: &[BoxPiece<T>],
    measure: &ReferenceMeasure<T>,
    max_degree: u32,
    label: String,
) -> Result<Synthesized<T>> {
    let nvars = measure.nvars();
    let d = max_degree as usize;
    let mut per_piece = Vec::with_capacity(pieces.len());
    let mut negative = 0;
    let mut min_sample = T::infinity();
    for piece in pieces {
        if piece.bounds.len() != nvars {
            return Err(Error::VariableCount {
                expected: nvars,
                found: piece.bounds.len(),
            });
        }
        if piece.value < T::zero() {
            negative += 1;
        }
        min_sample = min_sample.min(piece.value);
        let axes: Vec<Vec<f64>> = (0..nvars)
            .map(|v| {
                let (lo, hi) = (piece.bounds[v].0.as_f64(), piece.bounds[v].1.as_f64());
                match measure {
                    ReferenceMeasure::LebesgueBox(b) => {
                        let (blo, bhi) = (b[v].0.as_f64(), b[v].1.as_f64());
                        interval_moments(lo.max(blo), hi.min(bhi), d, false)
                    }
                    ReferenceMeasure::Gaussian { .. } => interval_moments(lo, hi, d, true),
                }
            })
            .collect();
        per_piece.push((piece.value.as_f64(), axes));
    }
    let moments = MomentSequence::from_fn(nvars, max_degree, label, |alpha: &MultiIndex| {
        let total: f64 = per_piece
            .iter()
            .map(|(value, axes)| {
                alpha
                    .exponents()
                    .iter()
                    .enumerate()
                    .fold(*value, |acc, (v, &e)| acc * axes[v][e as usize])
            })
            .sum();
        T::of(total)
    });
    Ok(Synthesized {
        moments,
        negative_samples: negative,
        min_sample,
        nodes_per_axis: None,
    })
}

/// Maximum of `h` over a uniform grid (endpoints included) on a box.
pub fn grid_sup<T: Scalar>(h: &DensitySpec<T>, bounds: &[(T, T)], points_per_axis: usize) -> T {
    let n = points_per_axis.max(2);
    let dims = bounds.len();
    let mut counter = vec![0usize; dims];
    let mut point = vec![T::zero(); dims];
    let mut best = T::neg_infinity();
    let denom = T::of((n - 1) as f64);
    for _ in 0..n.pow(dims as u32) {
        for (v, &(lo, hi)) in bounds.iter().enumerate() {
            point[v] = lo + (hi - lo) * T::of(counter[v] as f64) / denom;
        }
        best = best.max(h.eval(&point));
        for v in (0..dims).rev() {
            counter[v] += 1;
            if counter[v] < n {
                break;
            }
            counter[v] = 0;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moments::lebesgue_box_moments;
    use crate::poly::SparsePoly;

    fn unit() -> ReferenceMeasure<f64> {
        ReferenceMeasure::LebesgueBox(vec![(0.0, 1.0)])
    }

    #[test]
    fn polynomial_density_is_exact() {
        let h = DensitySpec::Polynomial(SparsePoly::var(1, 0));
        let s = quadrature_moments(&h, &unit(), 6).unwrap();
        for k in 0..=6u32 {
            let v = s.moments.get(&MultiIndex::new(vec![k])).unwrap();
            assert!((v - 1.0 / f64::from(k + 2)).abs() < 1e-15);
        }
        assert_eq!(s.negative_samples, 0);
    }

    #[test]
    fn constant_density_matches_analytic_gaussian() {
        let h = DensitySpec::constant(2, 1.0);
        let m = ReferenceMeasure::Gaussian { nvars: 2 };
        let s: Synthesized<f64> = quadrature_moments(&h, &m, 8).unwrap();
        let z = m.moments(8).unwrap();
        for (a, v) in z.iter() {
            assert!(
                (s.moments.get(a).unwrap() - v).abs() < 1e-12 * v.abs().max(1.0),
                "{a}"
            );
        }
    }

    #[test]
    fn too_few_nodes_is_an_error() {
        let h = DensitySpec::Polynomial(SparsePoly::var(1, 0));
        let err = quadrature_moments_with(&h, &unit(), 6, Some(3)).unwrap_err();
        assert!(matches!(
            err,
            Error::InsufficientExactness { needed: 7, .. }
        ));
    }

    #[test]
    fn indicator_is_integrated_exactly() {
        let h = DensitySpec::box_indicator(vec![(0.0, 0.5)], 2.0).unwrap();
        let s = quadrature_moments(&h, &unit(), 4).unwrap();
        assert_eq!(s.nodes_per_axis, None);
        // 2 ∫_0^{1/2} x^k dx = 2^{-k} / (k + 1)
        for k in 0..=4u32 {
            let v = s.moments.get(&MultiIndex::new(vec![k])).unwrap();
            assert!((v - 0.5f64.powi(k as i32) / f64::from(k + 1)).abs() < 1e-15);
        }
    }

    #[test]
    fn indicator_against_gaussian_matches_quadrature_on_wide_box() {
        let h = DensitySpec::box_indicator(vec![(-40.0, 40.0)], 1.0).unwrap();
        let s = quadrature_moments(&h, &ReferenceMeasure::Gaussian { nvars: 1 }, 8).unwrap();
        for k in 0..=8u32 {
            let v = s.moments.get(&MultiIndex::new(vec![k])).unwrap();
            let exact: f64 = crate::moments::standard_normal_moment(k);
            assert!((v - exact).abs() < 1e-12 * exact.max(1.0), "k={k}");
        }
    }

    #[test]
    fn negative_density_is_reported_not_fatal() {
        let h = DensitySpec::Polynomial(
            SparsePoly::var(1, 0)
                .sub(&SparsePoly::constant(1, 0.5))
                .unwrap(),
        );
        let s = quadrature_moments(&h, &unit(), 2).unwrap();
        assert!(s.negative_samples > 0);
        assert!(s.min_sample < 0.0);
        assert!(s.moments.mass().abs() < 1e-15);
    }

    #[test]
    fn function_density_converges() {
        let h = DensitySpec::function(1, "exp", |x: &[f64]| x[0].exp());
        let s = quadrature_moments(&h, &unit(), 3).unwrap();
        let e = std::f64::consts::E;
        assert!((s.moments.mass() - (e - 1.0)).abs() < 1e-14);
        let m1 = s.moments.get(&MultiIndex::new(vec![1])).unwrap();
        assert!((m1 - 1.0).abs() < 1e-14);
        let z = lebesgue_box_moments(&[(0.0, 1.0)], 3).unwrap();
        assert!(s.moments.mass() > z.mass());
    }

    #[test]
    fn grid_sup_hits_the_corner() {
        let h = DensitySpec::<f64>::Polynomial(
            SparsePoly::var(2, 0).add(&SparsePoly::var(2, 1)).unwrap(),
        );
        let s = grid_sup(&h, &[(0.0, 1.0), (0.0, 2.0)], 11);
        assert!((s - 3.0).abs() < 1e-15);
    }
}
