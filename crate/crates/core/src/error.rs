use std::path::PathBuf;

use thiserror::Error;

use crate::poly::MultiIndex;

#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("exponent vector has length {found}, expected one entry per generator ({expected})")]
    GeneratorCount { expected: usize, found: usize },

    #[error("moment {alpha} is beyond the available truncation degree {max_degree}")]
    MissingMoment { alpha: MultiIndex, max_degree: u32 },

    #[error(
        "level {requested} needs more moments; the largest admissible level is {max_admissible}"
    )]
    DegreeShortfall { requested: u32, max_admissible: i64 },

    #[error("degenerate interval [{lo}, {hi}] for variable {var}")]
    DegenerateInterval { var: usize, lo: f64, hi: f64 },

    #[error("moment file is incomplete: missing index {0}")]
    IncompleteShell(MultiIndex),

    #[error("moment file lists index {0} more than once")]
    DuplicateIndex(MultiIndex),

    #[error("moment index {alpha} exceeds the declared max_degree {max_degree}")]
    IndexOutOfShell { alpha: MultiIndex, max_degree: u32 },

    #[error("non-finite value for moment {0}")]
    NonFiniteMoment(MultiIndex),

    #[error("matrix dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("eigenvalue iteration did not converge within {iterations} iterations (dim {dim}, max |entry| {max_abs:e})")]
    NoConvergence {
        iterations: usize,
        dim: usize,
        max_abs: f64,
    },

    #[error("matrix has a non-finite entry at ({0}, {1})")]
    NonFiniteEntry(usize, usize),

    #[error("the Putinar-type method needs the set's putinar_ok flag asserted")]
    PutinarHypothesisNotAsserted,

    #[error("the Handelman-type method needs both normalized and generates_algebra asserted")]
    HandelmanHypothesisNotAsserted,

    #[error("{0} generators exceed the subset-enumeration cap of 20")]
    TooManyGenerators(usize),

    #[error("reference localizing matrix for {constraint} is not positive semidefinite (min eigenvalue {min_eig:e}); z is not a moment sequence on K")]
    ReferenceNotPsd { constraint: String, min_eig: f64 },

    #[error("nonpositive even moment L(X_{var}^{power}) = {value:e}")]
    NonpositiveEvenMoment { var: usize, power: u32, value: f64 },

    #[error(
        "quadrature rule with {nodes} nodes failed validation at degree {degree} (error {error:e})"
    )]
    QuadratureValidation {
        nodes: usize,
        degree: u32,
        error: f64,
    },

    #[error("quadrature needs exactness {needed} but the rule only reaches {available}")]
    InsufficientExactness { needed: u32, available: u32 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
