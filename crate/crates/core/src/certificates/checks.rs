use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{is_psd, min_kappa, KappaStatus};
use crate::matrices::{localizing_matrix, max_level};
use crate::moments::{MomentSequence, SemialgebraicSet};
use crate::poly::{
    apply_functional, mask_to_subset, power_product, subset_product, MonomialBasis, MultiIndex,
    SparsePoly,
};
use crate::scalar::Scalar;

use super::{
    carleman_partial_sums, CheckOptions, ConstraintReport, Method, Status, Verdict, Violation,
    ViolationKind,
};

const MAX_SCHMUDGEN_GENERATORS: usize = 20;

/// Outcome of a single constraint, before aggregation.
struct Outcome<T> {
    report: ConstraintReport<T>,
    violation: Option<Violation<T>>,
}

fn check_nvars<T: Scalar>(
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    k: Option<&SemialgebraicSet<T>>,
) -> Result<()> {
    if y.nvars() != z.nvars() {
        return Err(Error::VariableCount {
            expected: z.nvars(),
            found: y.nvars(),
        });
    }
    if let Some(k) = k {
        if k.nvars() != z.nvars() {
            return Err(Error::VariableCount {
                expected: z.nvars(),
                found: k.nvars(),
            });
        }
    }
    Ok(())
}

/// Evaluates every constraint, in parallel when requested, returning results
/// in enumeration order.
fn evaluate<C, T, F>(items: &[C], opts: &CheckOptions, f: F) -> Result<Vec<Outcome<T>>>
where
    C: Sync,
    T: Scalar,
    F: Fn(usize, &C) -> Result<Outcome<T>> + Sync,
{
    let results: Vec<Result<Outcome<T>>> = if opts.threads > 1 && items.len() > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
        pool.install(|| items.par_iter().enumerate().map(|(i, c)| f(i, c)).collect())
    } else {
        items.iter().enumerate().map(|(i, c)| f(i, c)).collect()
    };
    results.into_iter().collect()
}

fn aggregate<T: Scalar>(method: Method, level: u32, outcomes: Vec<Outcome<T>>) -> Verdict<T> {
    let mut violated = None;
    let mut kappa = T::zero();
    let mut borderline = Vec::new();
    let mut per_constraint = Vec::with_capacity(outcomes.len());
    for o in outcomes {
        if violated.is_none() {
            violated = o.violation;
        }
        if let Some(k) = o.report.kappa {
            kappa = kappa.max(k);
        }
        if o.report.borderline {
            borderline.push(o.report.constraint.clone());
        }
        per_constraint.push(o.report);
    }
    let mut notes = Vec::new();
    if !borderline.is_empty() {
        notes.push(format!(
            "borderline: near-null reference directions accepted as feasible for {}",
            borderline.join(", ")
        ));
    }
    let (status, kappa_lower) = match violated {
        Some(_) => (Status::InfeasibleAtLevel, None),
        None => (Status::FeasibleUpToLevel, Some(kappa)),
    };
    Verdict {
        method,
        level,
        status,
        kappa_lower,
        violated,
        per_constraint,
        notes,
        carleman: None,
        inherited_from: None,
    }
}

fn basis_labels(basis: Option<&MonomialBasis>) -> Option<Vec<String>> {
    basis.map(|b| b.iter().map(monomial_label).collect())
}

/// `1`, `x1`, `x1^2*x2`, ...
fn monomial_label(alpha: &MultiIndex) -> String {
    let factors: Vec<String> = alpha
        .exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                format!("x{}", i + 1)
            } else {
                format!("x{}^{e}", i + 1)
            }
        })
        .collect();
    if factors.is_empty() {
        "1".to_string()
    } else {
        factors.join("*")
    }
}

/// One matrix constraint `0 ⪯ M_r(θy) ⪯ κ M_r(θz)`.
fn matrix_constraint<T: Scalar>(
    index: usize,
    label: &str,
    theta: &SparsePoly<T>,
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    r: u32,
    opts: &CheckOptions,
) -> Result<Outcome<T>> {
    let my = localizing_matrix(y, theta, r)?;
    let mz = localizing_matrix(z, theta, r)?;

    let psd_z = is_psd(&mz, &opts.tol)?;
    if !psd_z.psd {
        return Err(Error::ReferenceNotPsd {
            constraint: label.to_string(),
            min_eig: psd_z.min_eigenvalue.as_f64(),
        });
    }

    let eig_y = crate::linalg::eigh(&my)?;
    let min_eig_y = eig_y.min();
    let threshold = opts.tol.rel::<T>() * T::one().max(eig_y.spectral_radius());
    if min_eig_y < -threshold {
        let v = eig_y.eigenvectors[0].clone();
        let value_z = mz.quad_form(&v);
        return Ok(Outcome {
            report: ConstraintReport {
                constraint: label.to_string(),
                kappa: None,
                min_eig_y,
                borderline: false,
            },
            violation: Some(Violation {
                constraint: label.to_string(),
                index,
                kind: ViolationKind::Nonnegativity,
                detail: format!(
                    "localizing matrix of y for {label} has eigenvalue {min_eig_y:e} below -{threshold:e}"
                ),
                witness: Some(v),
                basis: basis_labels(my.basis()),
                value_y: min_eig_y,
                value_z: Some(value_z),
            }),
        });
    }

    let k = min_kappa(&mz, &my, &opts.tol)?;
    if k.status == KappaStatus::Infeasible {
        let (fz, fy) = k.witness_forms.expect("infeasible result carries forms");
        return Ok(Outcome {
            report: ConstraintReport {
                constraint: label.to_string(),
                kappa: None,
                min_eig_y,
                borderline: false,
            },
            violation: Some(Violation {
                constraint: label.to_string(),
                index,
                kind: ViolationKind::Domination,
                detail: format!(
                    "direction with f'M(z)f = {fz:e} (numerically null) but f'M(y)f = {fy:e} for {label}"
                ),
                witness: k.witness,
                basis: basis_labels(my.basis()),
                value_y: fy,
                value_z: Some(fz),
            }),
        });
    }
    Ok(Outcome {
        report: ConstraintReport {
            constraint: label.to_string(),
            kappa: k.kappa,
            min_eig_y,
            borderline: k.borderline,
        },
        violation: None,
    })
}

fn matrix_method<T: Scalar>(
    method: Method,
    constraints: Vec<(String, SparsePoly<T>)>,
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    r: u32,
    opts: &CheckOptions,
) -> Result<Verdict<T>> {
    let admissible = constraints
        .iter()
        .map(|(_, theta)| max_level(y, theta).min(max_level(z, theta)))
        .min()
        .unwrap_or(-1);
    if i64::from(r) > admissible {
        return Err(Error::DegreeShortfall {
            requested: r,
            max_admissible: admissible,
        });
    }
    let outcomes = evaluate(&constraints, opts, |i, (label, theta)| {
        matrix_constraint(i, label, theta, y, z, r, opts)
    })?;
    Ok(aggregate(method, r, outcomes))
}

fn subset_label(subset: &[usize]) -> String {
    let inner = subset
        .iter()
        .map(|j| (j + 1).to_string())
        .collect::<Vec<_>>()
        .join(",");
    format!("J={{{inner}}}")
}

/// Labelled multipliers `θ` whose localizing matrices make up a
/// semidefinite method, in enumeration order. Handelman has none.
pub fn matrix_constraints<T: Scalar>(
    method: Method,
    nvars: usize,
    k: Option<&SemialgebraicSet<T>>,
) -> Result<Vec<(String, SparsePoly<T>)>> {
    let need_set = || Error::Unsupported(format!("method {method} needs a set description"));
    match method {
        Method::Schmudgen => {
            let k = k.ok_or_else(need_set)?;
            let m = k.num_generators();
            if m > MAX_SCHMUDGEN_GENERATORS {
                return Err(Error::TooManyGenerators(m));
            }
            let mut constraints = Vec::with_capacity(1 << m);
            for mask in 0..(1u64 << m) {
                let subset = mask_to_subset(mask, m);
                let theta = subset_product(k.generators(), &subset, k.nvars())?;
                constraints.push((subset_label(&subset), theta));
            }
            Ok(constraints)
        }
        Method::Putinar => {
            let k = k.ok_or_else(need_set)?;
            let mut constraints = vec![("j=0".to_string(), SparsePoly::one(k.nvars()))];
            for (j, g) in k.generators().iter().enumerate() {
                constraints.push((format!("j={}", j + 1), g.clone()));
            }
            Ok(constraints)
        }
        Method::Noncompact => Ok(vec![("moment".to_string(), SparsePoly::one(nvars))]),
        Method::Handelman => Err(Error::Unsupported(
            "handelman constraints are linear functionals, not matrices".to_string(),
        )),
    }
}

/// Level-`r` test over every product `g_J`, subsets enumerated by bitmask.
pub fn check_schmudgen<T: Scalar>(
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    k: &SemialgebraicSet<T>,
    r: u32,
    opts: &CheckOptions,
) -> Result<Verdict<T>> {
    check_nvars(y, z, Some(k))?;
    let constraints = matrix_constraints(Method::Schmudgen, k.nvars(), Some(k))?;
    matrix_method(Method::Schmudgen, constraints, y, z, r, opts)
}

/// Level-`r` test over `g_0 ≡ 1, g_1, ..., g_m`; needs `putinar_ok`.
pub fn check_putinar<T: Scalar>(
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    k: &SemialgebraicSet<T>,
    r: u32,
    opts: &CheckOptions,
) -> Result<Verdict<T>> {
    check_nvars(y, z, Some(k))?;
    if !k.putinar_ok {
        return Err(Error::PutinarHypothesisNotAsserted);
    }
    let constraints = matrix_constraints(Method::Putinar, k.nvars(), Some(k))?;
    matrix_method(Method::Putinar, constraints, y, z, r, opts)
}

/// Moment-matrix domination `κ M_r(z) ⪰ M_r(y) ⪰ 0`.
///
/// Only a sufficient condition, and only when `z` satisfies the Carleman
/// condition; the verdict carries the partial-sum diagnostic for `z`.
pub fn check_noncompact<T: Scalar>(
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    r: u32,
    opts: &CheckOptions,
) -> Result<Verdict<T>> {
    check_nvars(y, z, None)?;
    let constraints = matrix_constraints(Method::Noncompact, z.nvars(), None)?;
    let mut verdict = matrix_method(Method::Noncompact, constraints, y, z, r, opts)?;
    verdict.notes.push(
        "sufficient-only test: a bounded density follows only if z satisfies the Carleman condition, \
         which no finite truncation decides"
            .to_string(),
    );
    let kmax = z.max_degree() / 2;
    if kmax >= 1 {
        match carleman_partial_sums(z, kmax) {
            Ok(diag) => verdict.carleman = Some(diag),
            Err(e) => verdict
                .notes
                .push(format!("Carleman diagnostic unavailable: {e}")),
        }
    }
    Ok(verdict)
}

fn pair_label(alpha: &[u32], beta: &[u32]) -> String {
    format!(
        "alpha={} beta={}",
        MultiIndex::new(alpha.to_vec()),
        MultiIndex::new(beta.to_vec())
    )
}

/// Level-`r` linear test over `g^α (1−g)^β` with `|α| + |β| ≤ r`; needs
/// `normalized` and `generates_algebra`.
pub fn check_handelman<T: Scalar>(
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    k: &SemialgebraicSet<T>,
    r: u32,
    opts: &CheckOptions,
) -> Result<Verdict<T>> {
    check_nvars(y, z, Some(k))?;
    if !(k.normalized && k.generates_algebra) {
        return Err(Error::HandelmanHypothesisNotAsserted);
    }
    let m = k.num_generators();
    let gdeg = k
        .generators()
        .iter()
        .map(|g| g.degree())
        .max()
        .unwrap_or(0)
        .max(1);
    let available = i64::from(y.max_degree().min(z.max_degree()));
    let admissible = available / gdeg;
    if i64::from(r) > admissible {
        return Err(Error::DegreeShortfall {
            requested: r,
            max_admissible: admissible,
        });
    }

    let pairs = MonomialBasis::new(2 * m, r);
    let rel = opts.tol.rel::<T>();
    let outcomes = evaluate(pairs.indices(), opts, |index, e| {
        let (a_exp, b_exp) = e.exponents().split_at(m);
        let label = pair_label(a_exp, b_exp);
        let p = power_product(
            k.generators(),
            &MultiIndex::new(a_exp.to_vec()),
            &MultiIndex::new(b_exp.to_vec()),
            k.nvars(),
        )?;
        let a = apply_functional(z, &p)?;
        let b = apply_functional(y, &p)?;
        let tau = rel * T::one().max(a.abs()).max(b.abs());
        let violation = if b < -tau {
            Some((
                ViolationKind::Nonnegativity,
                format!("L_y = {b:e} < 0 for {label}"),
            ))
        } else if a <= tau && b > tau {
            Some((
                ViolationKind::Domination,
                format!("L_z = {a:e} vanishes but L_y = {b:e} for {label}"),
            ))
        } else {
            None
        };
        let kappa = (violation.is_none() && a > tau).then(|| b / a);
        Ok(Outcome {
            report: ConstraintReport {
                constraint: label.clone(),
                kappa,
                min_eig_y: b,
                borderline: false,
            },
            violation: violation.map(|(kind, detail)| Violation {
                constraint: label,
                index,
                kind,
                detail,
                witness: None,
                basis: None,
                value_y: b,
                value_z: Some(a),
            }),
        })
    })?;
    Ok(aggregate(Method::Handelman, r, outcomes))
}

/// Dispatches on `method`; `k` may be `None` only for the noncompact test.
pub fn check<T: Scalar>(
    method: Method,
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    k: Option<&SemialgebraicSet<T>>,
    r: u32,
    opts: &CheckOptions,
) -> Result<Verdict<T>> {
    let need_set = || Error::Unsupported(format!("method {method} needs a set description"));
    match method {
        Method::Schmudgen => check_schmudgen(y, z, k.ok_or_else(need_set)?, r, opts),
        Method::Putinar => check_putinar(y, z, k.ok_or_else(need_set)?, r, opts),
        Method::Handelman => check_handelman(y, z, k.ok_or_else(need_set)?, r, opts),
        Method::Noncompact => check_noncompact(y, z, r, opts),
    }
}

/// Verdicts for `r = 0..=r_max`. After the first refutation every later level
/// inherits it without recomputation, since constraint sets only grow with r.
pub fn kappa_curve<T: Scalar>(
    method: Method,
    y: &MomentSequence<T>,
    z: &MomentSequence<T>,
    k: Option<&SemialgebraicSet<T>>,
    r_max: u32,
    opts: &CheckOptions,
) -> Result<Vec<Verdict<T>>> {
    let mut out: Vec<Verdict<T>> = Vec::with_capacity(r_max as usize + 1);
    let mut refuted: Option<Verdict<T>> = None;
    for r in 0..=r_max {
        if let Some(base) = &refuted {
            let mut v = base.clone();
            v.level = r;
            v.per_constraint.clear();
            v.inherited_from = Some(base.level);
            v.notes = vec![format!(
                "inherited from the refutation at level {}",
                base.level
            )];
            out.push(v);
            continue;
        }
        let v = check(method, y, z, k, r, opts)?;
        if !v.is_feasible() {
            refuted = Some(v.clone());
        }
        out.push(v);
    }
    Ok(out)
}
