//! Unobstructed sets and saturation.

use serde::{Deserialize, Serialize};

use super::{build_decomposition, enumeration};
use crate::error::Result;
use crate::graph::{
    check_cap, graph_of, matching_size_on_rows, neighborhood_masks, Graph, VertexSet,
};
use crate::matrix::{exact_rank, SparseSymMatrix};

/// True iff no subset of `set` with at most `s` elements is non-expanding.
pub fn is_unobstructed(g: &Graph, set: &VertexSet, s: usize) -> bool {
    if set.is_empty() || s == 0 {
        return true;
    }
    if s >= set.len() {
        // Hall: some subset is non-expanding iff the rows of `set` cannot
        // all be matched
        return matching_size_on_rows(g, set.as_slice()) == set.len();
    }
    enumeration::enumerate(g, s, Some(set)).is_empty()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UMode {
    /// Subset enumeration, `n <= 22`.
    Exact,
    /// `n - |T \ T1|` from the decomposition; a lower bound in general.
    Structural,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnobstructedSize {
    pub value: usize,
    pub mode: UMode,
}

impl UnobstructedSize {
    pub fn is_exact(&self) -> bool {
        self.mode == UMode::Exact
    }

    pub fn label(&self) -> &'static str {
        match self.mode {
            UMode::Exact => "exact",
            UMode::Structural => "structural estimate",
        }
    }
}

/// Size of the largest `s`-unobstructed vertex set.
pub fn largest_unobstructed_size(g: &Graph, s: usize, mode: UMode) -> Result<UnobstructedSize> {
    let value = match mode {
        UMode::Exact => largest_unobstructed_size_exact(g, s)?,
        UMode::Structural => {
            let d = build_decomposition(g, s + 1)?;
            g.n() - d.t.difference(&d.t1).len()
        }
    };
    Ok(UnobstructedSize { value, mode })
}

pub fn largest_unobstructed_size_exact(g: &Graph, s: usize) -> Result<usize> {
    check_cap(g, "vertex count for exact unobstructed search")?;
    let n = g.n();
    let nb = neighborhood_masks(g);
    // blocked[S]: S has a non-expanding subset of size <= s
    let mut blocked: Vec<bool> = nb
        .iter()
        .enumerate()
        .map(|(set, m)| {
            let k = (set as u32).count_ones();
            set != 0 && k as usize <= s && m.count_ones() < k
        })
        .collect();
    for bit in 0..n {
        let b = 1usize << bit;
        for set in 0..blocked.len() {
            if set & b != 0 && blocked[set ^ b] {
                blocked[set] = true;
            }
        }
    }
    Ok(blocked
        .iter()
        .enumerate()
        .filter(|(_, &x)| !x)
        .map(|(set, _)| set.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// `rank(Q)` equals the largest `s`-unobstructed set of `G(Q)`.
pub fn is_saturated(q: &SparseSymMatrix, s: usize) -> Result<bool> {
    let u = largest_unobstructed_size_exact(&graph_of(q), s)?;
    Ok(exact_rank(q) == u)
}
