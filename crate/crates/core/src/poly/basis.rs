use std::collections::HashMap;

use super::MultiIndex;

/// All monomials of total degree at most `max_degree` in `nvars` variables,
/// listed in graded-lex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialBasis {
    nvars: usize,
    max_degree: u32,
    indices: Vec<MultiIndex>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, max_degree: u32) -> Self {
        let mut indices = Vec::with_capacity(basis_size(nvars, max_degree));
        for d in 0..=max_degree {
            push_shell(nvars, d, &mut indices);
        }
        Self {
            nvars,
            max_degree,
            indices,
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MultiIndex> {
        self.indices.iter()
    }

    /// Position lookup table, for callers that index many entries.
    pub fn positions(&self) -> HashMap<MultiIndex, usize> {
        self.indices
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect()
    }
}

/// `C(n + d, n)`, the number of monomials of degree ≤ d in n variables.
pub fn basis_size(nvars: usize, max_degree: u32) -> usize {
    let d = max_degree as usize;
    let mut c: usize = 1;
    for k in 1..=nvars {
        c = c * (d + k) / k;
    }
    c
}

/// Degree-`d` shell, largest exponent of the first variable first.
fn push_shell(nvars: usize, d: u32, out: &mut Vec<MultiIndex>) {
    if nvars == 0 {
        if d == 0 {
            out.push(MultiIndex::new(Vec::new()));
        }
        return;
    }
    let mut buf = vec![0u32; nvars];
    fill(&mut buf, 0, d, out);
}

fn fill(buf: &mut [u32], pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == buf.len() {
        buf[pos] = remaining;
        out.push(MultiIndex::new(buf.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        buf[pos] = e;
        fill(buf, pos + 1, remaining - e, out);
    }
    buf[pos] = 0;
}
