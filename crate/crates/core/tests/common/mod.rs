#![allow(dead_code)]

use bounded_density::matrices::SymMatrix;
use bounded_density::moments::{DensitySpec, SemialgebraicSet};
use bounded_density::oracle::{quadrature_moments, ReferenceMeasure};
use bounded_density::poly::SparsePoly;
use bounded_density::{lebesgue_box_moments, Moments};
use rand::Rng;

pub fn unit_interval() -> SemialgebraicSet<f64> {
    SemialgebraicSet::box_set(&[(0.0, 1.0)]).unwrap()
}

pub fn lebesgue_unit(nvars: usize, degree: u32) -> Moments {
    lebesgue_box_moments(&vec![(0.0, 1.0); nvars], degree).unwrap()
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * f64::from(n - i) / f64::from(i + 1))
}

/// `Σ c_k C(d,k) x^k (1−x)^{d−k}`; nonnegative on [0, 1] when every `c_k ≥ 0`,
/// and bounded there by `max c_k`.
pub fn bernstein(coeffs: &[f64]) -> SparsePoly<f64> {
    let d = coeffs.len() as u32 - 1;
    let x = SparsePoly::var(1, 0);
    let one_minus = SparsePoly::one(1).sub(&x).unwrap();
    coeffs
        .iter()
        .enumerate()
        .fold(SparsePoly::zero(1), |acc, (k, &c)| {
            let k = k as u32;
            let term = x
                .pow(k)
                .mul(&one_minus.pow(d - k))
                .unwrap()
                .scale(c * binomial(d, k));
            acc.add(&term).unwrap()
        })
}

/// Random density of degree ≤ 4, nonnegative on [0, 1].
pub fn random_density(rng: &mut impl Rng) -> SparsePoly<f64> {
    let d = rng.gen_range(0..=4);
    let coeffs: Vec<f64> = (0..=d).map(|_| rng.gen_range(0.0..2.0)).collect();
    bernstein(&coeffs)
}

pub fn lebesgue_quadrature(h: &SparsePoly<f64>, degree: u32) -> Moments {
    quadrature_moments(
        &DensitySpec::Polynomial(h.clone()),
        &ReferenceMeasure::LebesgueBox(vec![(0.0, 1.0)]),
        degree,
    )
    .unwrap()
    .moments
}

/// `GᵀG` for a random `k × dim` matrix `G`: PSD of rank ≤ k.
pub fn random_gram(rng: &mut impl Rng, dim: usize, k: usize) -> SymMatrix<f64> {
    let g: Vec<Vec<f64>> = (0..k)
        .map(|_| (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    SymMatrix::from_fn(dim, |i, j| g.iter().map(|row| row[i] * row[j]).sum())
}

/// `Σ_k c_k v_k v_kᵀ` over the given vectors.
pub fn gram_of(vectors: &[Vec<f64>], weights: &[f64]) -> SymMatrix<f64> {
    let dim = vectors[0].len();
    SymMatrix::from_fn(dim, |i, j| {
        vectors
            .iter()
            .zip(weights)
            .map(|(v, &w)| w * v[i] * v[j])
            .sum()
    })
}
