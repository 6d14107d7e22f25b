//! Independent oracles used to build fixtures and cross-check the kernel:
//! Gauss quadrature, moment synthesis from a known density, a grid supremum,
//! and a bisection solver for κ.

mod bisect;
pub mod quadrature;
mod synth;

pub use bisect::{bisect_kappa, BisectOutcome, BISECT_CAP};
pub use quadrature::{QuadratureRule, ReferenceMeasure};
pub use synth::{
    grid_sup, quadrature_moments, quadrature_moments_with, Synthesized, DEFAULT_FUNCTION_NODES,
};
