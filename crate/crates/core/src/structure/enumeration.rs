//! Enumeration of minimal non-expanding sets.
//!
//! Every member `v` of a minimal non-expanding set `S` satisfies
//! `|N(v)| <= |S| - 1`, and `S` is connected in the graph joining two vertices
//! whenever their neighbourhoods meet. Connected candidates are grown with the
//! ESU scheme, so each one is visited once, and a branch is cut as soon as its
//! neighbourhood reaches `max_size` vertices.

use super::NonExpandingWitness;
use crate::graph::{Graph, VertexSet};

struct Search<'a> {
    g: &'a Graph,
    max_size: usize,
    /// candidate graph: neighbourhoods intersect
    h: Vec<Vec<usize>>,
    /// members of the current set plus their candidate-graph neighbours
    blocked: Vec<u32>,
    /// multiplicity of each vertex in the neighbourhood of the current set
    nb_count: Vec<u32>,
    nb_size: usize,
    found: Vec<NonExpandingWitness>,
}

/// All minimal non-expanding sets of size at most `max_size` whose members lie
/// in `within` (all vertices when `None`). No size cap is applied here.
pub(crate) fn enumerate(
    g: &Graph,
    max_size: usize,
    within: Option<&VertexSet>,
) -> Vec<NonExpandingWitness> {
    let n = g.n();
    if max_size == 0 || n == 0 {
        return Vec::new();
    }
    let candidate: Vec<bool> = (0..n)
        .map(|v| g.degree(v) < max_size && within.map_or(true, |w| w.contains(v)))
        .collect();
    let mut h = vec![Vec::new(); n];
    for u in (0..n).filter(|&u| candidate[u]) {
        let mut adj: Vec<usize> = g
            .closed_row(u)
            .flat_map(|w| g.closed_row(w))
            .filter(|&x| x != u && candidate[x])
            .collect();
        adj.sort_unstable();
        adj.dedup();
        h[u] = adj;
    }
    let mut search = Search {
        g,
        max_size,
        h,
        blocked: vec![0; n],
        nb_count: vec![0; n],
        nb_size: 0,
        found: Vec::new(),
    };
    let mut current = Vec::with_capacity(max_size);
    for v in (0..n).filter(|&v| candidate[v]) {
        search.push(&mut current, v);
        let ext: Vec<usize> = search.h[v].iter().copied().filter(|&u| u > v).collect();
        search.extend(&mut current, ext, v);
        search.pop(&mut current);
    }
    let mut found = search.found;
    found.sort_by(|a, b| (a.set.len(), &a.set).cmp(&(b.set.len(), &b.set)));
    found
}

impl Search<'_> {
    fn push(&mut self, current: &mut Vec<usize>, w: usize) {
        current.push(w);
        self.blocked[w] += 1;
        for &u in &self.h[w] {
            self.blocked[u] += 1;
        }
        for x in self.g.closed_row(w) {
            if self.nb_count[x] == 0 {
                self.nb_size += 1;
            }
            self.nb_count[x] += 1;
        }
    }

    fn pop(&mut self, current: &mut Vec<usize>) {
        let w = current.pop().expect("nonempty");
        self.blocked[w] -= 1;
        for &u in &self.h[w] {
            self.blocked[u] -= 1;
        }
        for x in self.g.closed_row(w) {
            self.nb_count[x] -= 1;
            if self.nb_count[x] == 0 {
                self.nb_size -= 1;
            }
        }
    }

    fn extend(&mut self, current: &mut Vec<usize>, mut ext: Vec<usize>, root: usize) {
        if self.nb_size < current.len() && is_minimal(self.g, current, self.nb_size) {
            let set = VertexSet::new(current.iter().copied());
            let neighborhood = self.g.neighborhood(&set);
            self.found.push(NonExpandingWitness {
                set,
                neighborhood,
                minimal: true,
            });
            // supersets are not minimal
            return;
        }
        if current.len() == self.max_size {
            return;
        }
        while let Some(w) = ext.pop() {
            let added = self
                .g
                .closed_row(w)
                .filter(|&x| self.nb_count[x] == 0)
                .count();
            if self.nb_size + added >= self.max_size {
                continue;
            }
            let mut next = ext.clone();
            next.extend(
                self.h[w]
                    .iter()
                    .copied()
                    .filter(|&u| u > root && self.blocked[u] == 0),
            );
            self.push(current, w);
            self.extend(current, next, root);
            self.pop(current);
        }
    }
}

/// Minimality of a non-expanding set with `|N(S)| = nb_size`: no proper
/// nonempty subset is non-expanding.
fn is_minimal(g: &Graph, set: &[usize], nb_size: usize) -> bool {
    let k = set.len();
    if k == 1 {
        return true;
    }
    if nb_size + 1 != k {
        return false;
    }
    let mut buf = Vec::new();
    for mask in 1..(1u32 << k) - 1 {
        buf.clear();
        for (b, &v) in set.iter().enumerate() {
            if mask >> b & 1 == 1 {
                buf.extend(g.closed_row(v));
            }
        }
        buf.sort_unstable();
        buf.dedup();
        if buf.len() < mask.count_ones() as usize {
            return false;
        }
    }
    true
}
