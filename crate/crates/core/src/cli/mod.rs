//! `bounded-density moments|check|curve`.
//!
//! Exit codes: 0 feasible, 1 infeasible, 2 any error (including usage).

mod expr;
mod report;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use expr::{parse_density, parse_interval, parse_poly};
pub use report::{carleman_text, curve_text, fmt_sig, verdict_text};

use crate::certificates::{check, kappa_curve, matrix_constraints, CheckOptions, Method, Verdict};
use crate::error::{Error, Result};
use crate::linalg::TolPolicy;
use crate::matrices::localizing_matrix;
use crate::moments::{
    dirac_moments, moments_to_json, read_moments, read_set, MomentSequence, SemialgebraicSet,
};
use crate::oracle::{quadrature_moments_with, ReferenceMeasure};

pub const EXIT_FEASIBLE: i32 = 0;
pub const EXIT_INFEASIBLE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bounded-density",
    version,
    about = "Certify or refute bounded-density moment sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a moment file for a built-in measure, optionally with a density.
    Moments(MomentsArgs),
    /// Run one certificate check at a fixed level.
    Check(CheckArgs),
    /// Sweep levels 0..=r-max and tabulate κ_r.
    Curve(CurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    Lebesgue,
    Gaussian,
    Dirac,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[arg(long, value_enum)]
    pub measure: MeasureKind,
    /// Interval `lo,hi`; repeat once per variable, or give one to replicate.
    #[arg(long = "box", value_name = "LO,HI", allow_hyphen_values = true)]
    pub boxes: Vec<String>,
    #[arg(long)]
    pub nvars: Option<usize>,
    /// Atom location for `dirac`, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// `poly:<expr>` or `box-indicator:lo,hi;...*scale`.
    #[arg(long)]
    pub density: Option<String>,
    #[arg(long)]
    pub degree: u32,
    /// Quadrature nodes per axis (default: exact for polynomials).
    #[arg(long)]
    pub nodes: Option<usize>,
    #[arg(long)]
    pub label: Option<String>,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Candidate moment file.
    #[arg(long = "y")]
    pub y: PathBuf,
    /// Reference moment file.
    #[arg(long = "z")]
    pub z: PathBuf,
    /// Set description file (needed by every method except noncompact).
    #[arg(long)]
    pub set: Option<PathBuf>,
    /// Shortcut for a normalized box set: one `lo,hi` per variable.
    #[arg(
        long = "box",
        value_name = "LO,HI",
        allow_hyphen_values = true,
        conflicts_with = "set"
    )]
    pub boxes: Vec<String>,
    #[arg(long, value_parser = parse_method)]
    pub method: Method,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    #[arg(long)]
    pub rel_tol: Option<f64>,
    #[arg(long)]
    pub rank_tol: Option<f64>,
    #[arg(long, env = "BD_THREADS", default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long, short = 'r')]
    pub level: u32,
    /// Write the y/z localizing matrices as JSON (matrix methods only).
    #[arg(long)]
    pub dump_matrices: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub r_max: u32,
}

fn parse_method(s: &str) -> std::result::Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_ERROR
            } else {
                EXIT_FEASIBLE
            };
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    match &cli.command {
        Command::Moments(a) => cmd_moments(a, out),
        Command::Check(a) => cmd_check(a, out),
        Command::Curve(a) => cmd_curve(a, out),
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<()> {
    match output {
        Some(p) => fs::write(p, text).map_err(io_err(p)),
        None => out
            .write_all(text.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

fn parse_boxes(boxes: &[String], nvars: Option<usize>) -> Result<Vec<(f64, f64)>> {
    let mut bounds = boxes
        .iter()
        .map(|b| parse_interval(b))
        .collect::<Result<Vec<_>>>()?;
    match (bounds.len(), nvars) {
        (0, _) => return Err(Error::Parse("--box is required for this measure".into())),
        (1, Some(n)) if n > 1 => bounds = vec![bounds[0]; n],
        (k, Some(n)) if k != n => {
            return Err(Error::VariableCount {
                expected: n,
                found: k,
            })
        }
        _ => {}
    }
    Ok(bounds)
}

pub fn cmd_moments(a: &MomentsArgs, out: &mut dyn Write) -> Result<i32> {
    let mut seq: MomentSequence<f64> = match a.measure {
        MeasureKind::Dirac => {
            if a.density.is_some() {
                return Err(Error::Unsupported(
                    "a density has no meaning for a Dirac measure".into(),
                ));
            }
            let point = a
                .point
                .as_deref()
                .ok_or_else(|| Error::Parse("--point is required for --measure dirac".into()))?
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad coordinate '{s}'")))
                })
                .collect::<Result<Vec<f64>>>()?;
            if let Some(n) = a.nvars {
                if n != point.len() {
                    return Err(Error::VariableCount {
                        expected: n,
                        found: point.len(),
                    });
                }
            }
            dirac_moments(&point, a.degree)
        }
        kind => {
            let measure = match kind {
                MeasureKind::Lebesgue => {
                    ReferenceMeasure::LebesgueBox(parse_boxes(&a.boxes, a.nvars)?)
                }
                _ => ReferenceMeasure::Gaussian {
                    nvars: a.nvars.unwrap_or(1),
                },
            };
            match &a.density {
                None => measure.moments(a.degree)?,
                Some(spec) => {
                    let h = parse_density(spec, measure.nvars())?;
                    let s = quadrature_moments_with(&h, &measure, a.degree, a.nodes)?;
                    if s.negative_samples > 0 {
                        eprintln!(
                            "warning: density is negative at {} sample(s) (min {}); not a valid density",
                            s.negative_samples,
                            fmt_sig(s.min_sample)
                        );
                    }
                    s.moments
                }
            }
        }
    };
    if let Some(l) = &a.label {
        seq.set_label(l.clone());
    }
    emit(&moments_to_json(&seq), a.output.as_deref(), out)?;
    Ok(EXIT_FEASIBLE)
}

struct Loaded {
    y: MomentSequence<f64>,
    z: MomentSequence<f64>,
    set: Option<SemialgebraicSet<f64>>,
    opts: CheckOptions,
}

fn load(c: &CommonArgs) -> Result<Loaded> {
    let y = read_moments(&c.y)?;
    let z = read_moments(&c.z)?;
    let set = if let Some(p) = &c.set {
        Some(read_set(p)?)
    } else if !c.boxes.is_empty() {
        Some(SemialgebraicSet::box_set(&parse_boxes(
            &c.boxes,
            Some(z.nvars()),
        )?)?)
    } else {
        None
    };
    let mut tol = TolPolicy::default();
    if let Some(v) = c.rel_tol {
        tol.rel_tol = v;
    }
    if let Some(v) = c.rank_tol {
        tol.rank_tol = v;
    }
    Ok(Loaded {
        y,
        z,
        set,
        opts: CheckOptions {
            tol,
            threads: c.threads.max(1),
        },
    })
}

fn exit_for(v: &Verdict<f64>) -> i32 {
    if v.is_feasible() {
        EXIT_FEASIBLE
    } else {
        EXIT_INFEASIBLE
    }
}

fn to_json<S: serde::Serialize>(v: &S) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn cmd_check(a: &CheckArgs, out: &mut dyn Write) -> Result<i32> {
    let c = &a.common;
    let l = load(c)?;
    let verdict = check(c.method, &l.y, &l.z, l.set.as_ref(), a.level, &l.opts)?;
    if let Some(path) = &a.dump_matrices {
        let mut dump = Vec::new();
        for (label, theta) in matrix_constraints(c.method, l.z.nvars(), l.set.as_ref())? {
            dump.push(serde_json::json!({
                "constraint": label,
                "y": localizing_matrix(&l.y, &theta, a.level)?.to_json(),
                "z": localizing_matrix(&l.z, &theta, a.level)?.to_json(),
            }));
        }
        fs::write(path, to_json(&dump)).map_err(io_err(path))?;
    }
    let text = match c.format {
        Format::Text => verdict_text(&verdict),
        Format::Json => to_json(&verdict),
    };
    emit(&text, c.output.as_deref(), out)?;
    Ok(exit_for(&verdict))
}

pub fn cmd_curve(a: &CurveArgs, out: &mut dyn Write) -> Result<i32> {
    let c = &a.common;
    let l = load(c)?;
    let verdicts = kappa_curve(c.method, &l.y, &l.z, l.set.as_ref(), a.r_max, &l.opts)?;
    let text = match c.format {
        Format::Text => curve_text(c.method, &verdicts),
        Format::Json => to_json(&serde_json::json!({
            "method": c.method,
            "r_max": a.r_max,
            "levels": verdicts,
        })),
    };
    emit(&text, c.output.as_deref(), out)?;
    Ok(verdicts.last().map(exit_for).unwrap_or(EXIT_FEASIBLE))
}
