//! Certificate checkers for bounded-density representations at a fixed
//! truncation level, and the Carleman partial-sum diagnostic.

mod carleman;
mod checks;
mod verdict;

pub use carleman::{carleman_partial_sums, CarlemanDiagnostic};
pub use checks::{
    check, check_handelman, check_noncompact, check_putinar, check_schmudgen, kappa_curve,
    matrix_constraints,
};
pub use verdict::{
    CheckOptions, ConstraintReport, Method, Status, Verdict, Violation, ViolationKind,
};
