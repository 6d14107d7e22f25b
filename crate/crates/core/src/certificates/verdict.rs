use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::linalg::TolPolicy;

use super::CarlemanDiagnostic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Method {
    /// Localizing matrices of every product `g_J`, `J ⊆ {1..m}`.
    Schmudgen,
    /// Localizing matrices of `1, g_1, ..., g_m` only.
    Putinar,
    /// Linear constraints on `g^α (1−g)^β`.
    Handelman,
    /// Moment matrices only, for measures on all of `R^n`.
    Noncompact,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Schmudgen,
        Method::Putinar,
        Method::Handelman,
        Method::Noncompact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Schmudgen => "schmudgen",
            Method::Putinar => "putinar",
            Method::Handelman => "handelman",
            Method::Noncompact => "noncompact",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "schmudgen" | "schmuedgen" => Ok(Method::Schmudgen),
            "putinar" => Ok(Method::Putinar),
            "handelman" => Ok(Method::Handelman),
            "noncompact" => Ok(Method::Noncompact),
            other => Err(Error::Parse(format!("unknown method '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    /// Every level-r constraint holds for some κ; says nothing conclusive
    /// about existence of a bounded density.
    FeasibleUpToLevel,
    /// No κ satisfies the level-r constraints: no bounded density exists.
    InfeasibleAtLevel,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::FeasibleUpToLevel => "FEASIBLE_UP_TO_LEVEL",
            Status::InfeasibleAtLevel => "INFEASIBLE_AT_LEVEL",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// The functional of `y` is negative on the constraint.
    Nonnegativity,
    /// `y` is positive where `z` vanishes, so no finite κ dominates it.
    Domination,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation<T> {
    pub constraint: String,
    /// Position of the constraint in enumeration order.
    pub index: usize,
    pub kind: ViolationKind,
    pub detail: String,
    /// Coefficients of the offending polynomial `f` in the monomial basis.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<T>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<String>>,
    /// The `y`-side value on the witness (form or functional).
    pub value_y: T,
    /// The `z`-side value on the witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_z: Option<T>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport<T> {
    pub constraint: String,
    /// Least κ this constraint alone requires; `None` when it is violated or
    /// does not bound κ.
    pub kappa: Option<T>,
    /// Smallest eigenvalue of the `y`-side matrix (the functional value for
    /// linear constraints).
    pub min_eig_y: T,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub borderline: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict<T> {
    pub method: Method,
    pub level: u32,
    pub status: Status,
    pub kappa_lower: Option<T>,
    pub violated: Option<Violation<T>>,
    pub per_constraint: Vec<ConstraintReport<T>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carleman: Option<CarlemanDiagnostic<T>>,
    /// Level whose refutation this verdict inherits, in a level sweep.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inherited_from: Option<u32>,
}

impl<T> Verdict<T> {
    pub fn is_feasible(&self) -> bool {
        self.status == Status::FeasibleUpToLevel
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CheckOptions {
    pub tol: TolPolicy,
    /// Worker threads for per-constraint evaluation; 1 runs inline.
    pub threads: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self {
            tol: TolPolicy::default(),
            threads: 1,
        }
    }
}
