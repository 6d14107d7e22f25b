//! Certificates for the truncated moment problem with bounded density.
//!
//! Given a candidate moment sequence `y` and the moments `z` of a reference
//! measure `μ`, the checkers in [`certificates`] either refute at level `r`
//! that `y` comes from a measure `h·dμ` with `h` essentially bounded, or
//! return the least `κ_r` compatible with every level-`r` constraint, which
//! lower-bounds `‖h‖∞` whenever such an `h` exists.
//!
//! The numerical core is generic over [`Scalar`] (`f32`/`f64`); the aliases
//! below fix it to `f64`, which is what the CLI and file formats use.

#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod certificates;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod matrices;
pub mod moments;
pub mod oracle;
pub mod poly;
mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use certificates::{
    carleman_partial_sums, check, check_handelman, check_noncompact, check_putinar,
    check_schmudgen, kappa_curve, CarlemanDiagnostic, CheckOptions, ConstraintReport, Method,
    Status, Verdict, Violation,
};
pub use linalg::{eigh, is_psd, min_kappa, KappaStatus, TolPolicy};
pub use matrices::{localizing_matrix, max_level, moment_matrix};
pub use moments::{dirac_moments, gaussian_moments, lebesgue_box_moments};
pub use poly::{apply_functional, poly_mul, power_product, subset_product, MultiIndex};

pub type Poly = poly::SparsePoly<f64>;
pub type Moments = moments::MomentSequence<f64>;
pub type Set = moments::SemialgebraicSet<f64>;
pub type Density = moments::DensitySpec<f64>;
pub type Matrix = matrices::SymMatrix<f64>;
pub type Eigen = linalg::EigenDecomposition<f64>;
pub type Kappa = linalg::KappaResult<f64>;
pub type Report = certificates::Verdict<f64>;

pub type Poly32 = poly::SparsePoly<f32>;
pub type Moments32 = moments::MomentSequence<f32>;
pub type Matrix32 = matrices::SymMatrix<f32>;
