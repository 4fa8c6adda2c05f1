//! Checkers for the graph classes used by the rank theorems.
//!
//! Exponential predicates answer exactly on small graphs. On large graphs they
//! only answer when a sound argument applies and otherwise return
//! [`Truth::Unknown`]; a `Fails` answer always carries a re-checkable
//! certificate.

mod expansion;
mod nice;
mod separation;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub use expansion::{
    is_locally_sparse, is_small_set_expander, violates_expansion, EXACT_PREDICATE_CAP,
};
pub use nice::{
    is_good, is_nearly_nice, is_nearly_nice_with, is_nice, is_nice_with, is_normal_pair,
    nice_count, NiceScope, GOOD_EXACT_CAP,
};
pub use separation::{
    is_well_separated, shortest_cycle_through, steiner_tree, w1_violation, w2_violation,
};

/// Thresholds derived from `(n, p, s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GoodnessParams {
    pub n: usize,
    pub p: f64,
    pub s: usize,
    /// `max(ln ln n, 1) / (2p)`
    pub k: f64,
    /// `max(ln ln n, 1)`; vertices of degree at most this are "low"
    pub degree_threshold: f64,
    /// `n / (ln n)^{3/2}`, capped at `n`
    pub small_set_bound: f64,
    /// `ln ln n` before flooring
    pub ln_ln_n: f64,
}

impl GoodnessParams {
    pub fn new(n: usize, p: f64, s: usize) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::param(format!("p = {p} must lie in (0, 1)")));
        }
        let ln_n = (n as f64).ln();
        let ln_ln_n = ln_n.ln();
        let degree_threshold = if ln_ln_n.is_finite() {
            ln_ln_n.max(1.0)
        } else {
            1.0
        };
        let small_set_bound = if ln_n > 1.0 {
            (n as f64 / ln_n.powf(1.5)).min(n as f64)
        } else {
            n as f64
        };
        Ok(GoodnessParams {
            n,
            p,
            s,
            k: degree_threshold / (2.0 * p),
            degree_threshold,
            small_set_bound,
            ln_ln_n,
        })
    }

    pub fn with_degree_threshold(mut self, t: f64) -> Self {
        self.degree_threshold = t;
        self
    }

    pub fn with_small_set_bound(mut self, b: f64) -> Self {
        self.small_set_bound = b;
        self
    }

    pub fn is_low(&self, g: &Graph, v: usize) -> bool {
        g.degree(v) as f64 <= self.degree_threshold
    }

    pub fn low_vertices(&self, g: &Graph) -> Vec<usize> {
        (0..g.n()).filter(|&v| self.is_low(g, v)).collect()
    }

    /// Largest set size covered by the small-set bound.
    pub(crate) fn small_set_size(&self, n: usize) -> usize {
        (self.small_set_bound.floor() as usize).min(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Truth {
    Holds,
    Fails,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriState {
    pub value: Truth,
    pub certificate: Option<VertexSet>,
}

impl TriState {
    pub fn holds() -> Self {
        TriState {
            value: Truth::Holds,
            certificate: None,
        }
    }

    pub fn unknown() -> Self {
        TriState {
            value: Truth::Unknown,
            certificate: None,
        }
    }

    pub fn fails(certificate: VertexSet) -> Self {
        TriState {
            value: Truth::Fails,
            certificate: Some(certificate),
        }
    }

    pub fn is_holds(&self) -> bool {
        self.value == Truth::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.value == Truth::Fails
    }

    pub fn is_unknown(&self) -> bool {
        self.value == Truth::Unknown
    }

    /// `Some(true)` / `Some(false)` for definite answers.
    pub fn as_bool(&self) -> Option<bool> {
        match self.value {
            Truth::Holds => Some(true),
            Truth::Fails => Some(false),
            Truth::Unknown => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self.value {
            Truth::Holds => "holds",
            Truth::Fails => "fails",
            Truth::Unknown => "unknown",
        }
    }
}

/// Edges inside `set`, loops excluded.
pub fn internal_edges(g: &Graph, set: &VertexSet) -> usize {
    set.iter()
        .map(|v| g.neighbors(v).iter().filter(|&&u| set.contains(u)).count())
        .sum::<usize>()
        / 2
}

/// Edges leaving `set`, loops excluded.
pub fn boundary_edges(g: &Graph, set: &VertexSet) -> usize {
    set.iter()
        .map(|v| g.neighbors(v).iter().filter(|&&u| !set.contains(u)).count())
        .sum()
}
