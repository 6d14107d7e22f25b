//! JSON moment files and set files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiIndex, SparsePoly};
use crate::scalar::Scalar;

use super::{MomentSequence, SemialgebraicSet};

#[derive(Debug, Serialize, Deserialize)]
struct MomentEntry {
    alpha: Vec<u32>,
    value: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct MomentFile {
    nvars: usize,
    max_degree: u32,
    #[serde(default)]
    label: String,
    moments: Vec<MomentEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct TermEntry {
    alpha: Vec<u32>,
    coef: f64,
}

#[derive(Debug, Serialize, Deserialize)]
struct GeneratorEntry {
    terms: Vec<TermEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
struct SetFile {
    nvars: usize,
    generators: Vec<GeneratorEntry>,
    #[serde(default)]
    normalized: bool,
    #[serde(default)]
    generates_algebra: bool,
    #[serde(default)]
    putinar_ok: bool,
}

fn read_json<D: serde::de::DeserializeOwned>(path: &Path) -> Result<D> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })
}

fn write_json<S: Serialize>(value: &S, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|source| Error::Json {
        path: path.to_path_buf(),
        source,
    })?;
    text.push('\n');
    fs::write(path, text).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn moments_from_json<T: Scalar>(text: &str) -> Result<MomentSequence<T>> {
    let file: MomentFile = serde_json::from_str(text).map_err(|source| Error::Json {
        path: "<string>".into(),
        source,
    })?;
    moments_from_file(file)
}

fn moments_from_file<T: Scalar>(file: MomentFile) -> Result<MomentSequence<T>> {
    let mut map = BTreeMap::new();
    for entry in file.moments {
        let alpha = MultiIndex::new(entry.alpha);
        if map.insert(alpha.clone(), T::of(entry.value)).is_some() {
            return Err(Error::DuplicateIndex(alpha));
        }
    }
    MomentSequence::from_map(file.nvars, file.max_degree, file.label, map)
}

pub fn moments_to_json<T: Scalar>(seq: &MomentSequence<T>) -> String {
    serde_json::to_string_pretty(&moments_to_file(seq)).expect("moment file serializes")
}

fn moments_to_file<T: Scalar>(seq: &MomentSequence<T>) -> MomentFile {
    MomentFile {
        nvars: seq.nvars(),
        max_degree: seq.max_degree(),
        label: seq.label().to_string(),
        moments: seq
            .iter()
            .map(|(a, v)| MomentEntry {
                alpha: a.exponents().to_vec(),
                value: v.as_f64(),
            })
            .collect(),
    }
}

pub fn read_moments<T: Scalar>(path: impl AsRef<Path>) -> Result<MomentSequence<T>> {
    moments_from_file(read_json(path.as_ref())?)
}

/// Writes the sequence sorted graded-lex, values in shortest round-trip form.
pub fn write_moments<T: Scalar>(seq: &MomentSequence<T>, path: impl AsRef<Path>) -> Result<()> {
    write_json(&moments_to_file(seq), path.as_ref())
}

pub fn read_set<T: Scalar>(path: impl AsRef<Path>) -> Result<SemialgebraicSet<T>> {
    let file: SetFile = read_json(path.as_ref())?;
    let mut generators = Vec::with_capacity(file.generators.len());
    for g in file.generators {
        generators.push(SparsePoly::from_terms(
            file.nvars,
            g.terms
                .into_iter()
                .map(|t| (MultiIndex::new(t.alpha), T::of(t.coef))),
        )?);
    }
    Ok(SemialgebraicSet::new(file.nvars, generators)?.with_flags(
        file.normalized,
        file.generates_algebra,
        file.putinar_ok,
    ))
}

pub fn write_set<T: Scalar>(set: &SemialgebraicSet<T>, path: impl AsRef<Path>) -> Result<()> {
    let file = SetFile {
        nvars: set.nvars(),
        generators: set
            .generators()
            .iter()
            .map(|g| GeneratorEntry {
                terms: g
                    .terms()
                    .map(|(a, c)| TermEntry {
                        alpha: a.exponents().to_vec(),
                        coef: c.as_f64(),
                    })
                    .collect(),
            })
            .collect(),
        normalized: set.normalized,
        generates_algebra: set.generates_algebra,
        putinar_ok: set.putinar_ok,
    };
    write_json(&file, path.as_ref())
}
