//! Text rendering of verdicts. JSON goes straight through serde.

use std::fmt::Write as _;

use crate::certificates::{CarlemanDiagnostic, Method, Verdict};

/// `%.12g`-style formatting: 12 significant digits, trailing zeros trimmed.
pub fn fmt_sig(v: f64) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).max(0) as usize;
        let s = format!("{v:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        let s = format!("{v:.11e}");
        let (mant, e) = s.split_once('e').expect("exponent form");
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    }
}

fn fmt_kappa(k: Option<f64>) -> String {
    k.map(fmt_sig).unwrap_or_else(|| "-".to_string())
}

pub fn verdict_text(v: &Verdict<f64>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "method: {}", v.method);
    let _ = writeln!(s, "level: {}", v.level);
    let _ = writeln!(s, "status: {}", v.status);
    let _ = writeln!(s, "kappa_lower: {}", fmt_kappa(v.kappa_lower));
    if let Some(viol) = &v.violated {
        let _ = writeln!(
            s,
            "violated: {} (constraint #{})",
            viol.constraint, viol.index
        );
        let _ = writeln!(s, "  {}", viol.detail);
        if let (Some(w), Some(basis)) = (&viol.witness, &viol.basis) {
            let terms: Vec<String> = w
                .iter()
                .zip(basis)
                .filter(|(c, _)| c.abs() > 1e-12)
                .map(|(c, b)| format!("{}*{b}", fmt_sig(*c)))
                .collect();
            let _ = writeln!(s, "  witness f = {}", terms.join(" + "));
        }
    }
    if !v.per_constraint.is_empty() {
        let _ = writeln!(s, "constraints:");
        for c in &v.per_constraint {
            let _ = writeln!(
                s,
                "  {:<28} kappa={:<20} min_eig_y={}{}",
                c.constraint,
                fmt_kappa(c.kappa),
                fmt_sig(c.min_eig_y),
                if c.borderline { " (borderline)" } else { "" }
            );
        }
    }
    for note in &v.notes {
        let _ = writeln!(s, "note: {note}");
    }
    if let Some(c) = &v.carleman {
        s.push_str(&carleman_text(c));
    }
    s
}

pub fn carleman_text(c: &CarlemanDiagnostic<f64>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "carleman partial sums of z (K = 1..{}):", c.kmax);
    for (i, sums) in c.partial_sums.iter().enumerate() {
        let row: Vec<String> = sums.iter().map(|&v| fmt_sig(v)).collect();
        let _ = writeln!(s, "  x{}: {}", i + 1, row.join(" "));
    }
    s
}

pub fn curve_text(method: Method, verdicts: &[Verdict<f64>]) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "method: {method}");
    let _ = writeln!(s, "{:>3}  {:<22} kappa", "r", "status");
    for v in verdicts {
        let inherited = v
            .inherited_from
            .map(|l| format!("  (inherited from r={l})"))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "{:>3}  {:<22} {}{inherited}",
            v.level,
            v.status.to_string(),
            fmt_kappa(v.kappa_lower)
        );
    }
    if let Some(c) = verdicts.iter().rev().find_map(|v| v.carleman.as_ref()) {
        s.push_str(&carleman_text(c));
    }
    s
}
