//! The graph G(Q) of a symmetric matrix and the combinatorial rank.
//!
//! Vertices are the rows of Q. Off-diagonal nonzeros become edges and nonzero
//! diagonal entries become self-loops. A loop makes a vertex its own
//! neighbour, so `N({v})` contains `v` exactly when `v` carries a loop.

mod brute;
pub mod io;
mod matching;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SparseSymMatrix;

pub use brute::{brute_force_combinatorial_rank, BRUTE_FORCE_CAP};
pub(crate) use brute::{check_cap, neighborhood_masks};
pub(crate) use matching::matching_size_on_rows;
pub use matching::{combinatorial_rank, max_matching, min_deficiency_witness, Matching};

/// Sorted, duplicate-free set of vertex indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn new(members: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        VertexSet(v)
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    /// Like [`VertexSet::new`] but rejects members outside `[0, n)`.
    pub fn checked(n: usize, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let s = VertexSet::new(members);
        match s.0.last() {
            Some(&v) if v >= n => Err(Error::param(format!("vertex {v} out of range for n = {n}"))),
            _ => Ok(s),
        }
    }

    pub(crate) fn from_mask(mask: u64) -> Self {
        VertexSet((0..64).filter(|b| mask >> b & 1 == 1).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.iter().all(|v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        VertexSet::new(self.iter().chain(other.iter()))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| other.contains(v)).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        VertexSet::new(iter)
    }
}

impl From<Vec<usize>> for VertexSet {
    fn from(v: Vec<usize>) -> Self {
        VertexSet::new(v)
    }
}

/// Simple undirected graph with optional self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    loops: Vec<bool>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            loops: vec![false; n],
        }
    }

    /// Builds a graph from an edge list; `(i, i)` is a loop and repeated
    /// edges collapse.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::param(format!(
                    "edge ({i}, {j}) out of range for n = {n}"
                )));
            }
            if i == j {
                g.loops[i] = true;
            } else {
                g.adj[i].push(j);
                g.adj[j].push(i);
            }
        }
        for a in g.adj.iter_mut() {
            a.sort_unstable();
            a.dedup();
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Neighbours of `v` other than `v` itself, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u == v {
            self.loops[u]
        } else {
            self.adj[u].binary_search(&v).is_ok()
        }
    }

    /// `|N({v})|`; a loop counts once.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len() + self.loops[v] as usize
    }

    /// Number of non-loop edges.
    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn loop_count(&self) -> usize {
        self.loops.iter().filter(|&&l| l).count()
    }

    /// All edges `(i, j)` with `i <= j`, loops included, in row-major order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |i| {
            let lp = self.loops[i].then_some((i, i));
            lp.into_iter().chain(
                self.adj[i]
                    .iter()
                    .filter(move |&&j| j > i)
                    .map(move |&j| (i, j)),
            )
        })
    }

    /// `N({v})` including `v` when it has a loop.
    pub fn closed_row(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let lp = self.loops[v].then_some(v);
        self.adj[v].iter().copied().chain(lp)
    }

    /// Subgraph induced on the vertices `0..m`.
    pub fn prefix(&self, m: usize) -> Graph {
        let m = m.min(self.n());
        Graph {
            adj: self.adj[..m]
                .iter()
                .map(|a| a.iter().copied().take_while(|&j| j < m).collect())
                .collect(),
            loops: self.loops[..m].to_vec(),
        }
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        if u == v {
            g.loops[u] = true;
        } else if !g.has_edge(u, v) {
            let pu = g.adj[u].binary_search(&v).unwrap_err();
            g.adj[u].insert(pu, v);
            let pv = g.adj[v].binary_search(&u).unwrap_err();
            g.adj[v].insert(pv, u);
        }
        g
    }

    /// `N(S)`: every vertex adjacent to a member of `S`, members included
    /// when adjacent to another member or looped.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        VertexSet::new(s.iter().flat_map(|v| self.closed_row(v)))
    }

    /// `|N(S)| < |S|`.
    pub fn is_non_expanding(&self, s: &VertexSet) -> Result<bool> {
        if s.is_empty() {
            return Err(Error::param("non-expansion is undefined for the empty set"));
        }
        Ok(self.neighborhood(s).len() < s.len())
    }

    /// `n - |S| + |N(S)|`, the bound that `S` places on the rank.
    pub fn deficiency_bound(&self, s: &VertexSet) -> usize {
        self.n() - s.len() + self.neighborhood(s).len()
    }
}

/// `G(Q)`: edge `{i, j}` iff `q_ij != 0`, loop at `i` iff `q_ii != 0`.
pub fn graph_of(q: &SparseSymMatrix) -> Graph {
    Graph::from_edges(q.n(), q.entries().iter().map(|(i, j, _)| (*i, *j)))
        .expect("matrix indices are in range")
}
