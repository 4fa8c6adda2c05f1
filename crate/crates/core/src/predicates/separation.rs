//! Well-separation.
//!
//! W1: every connected subgraph on at most `5s` vertices has at most `s - 1`
//! low-degree vertices. A violation exists iff some `s` low vertices have a
//! Steiner tree on at most `5s` vertices, so W1 is decided by running
//! Dreyfus-Wagner on `s`-sets of low vertices that are pairwise within
//! distance `5s - 1`.
//!
//! W2: no cycle of length 1 or of length `3..=12s` passes through a low
//! vertex. The shortest cycle through `v` is read off one BFS from `v`.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{GoodnessParams, TriState};
use crate::graph::{Graph, VertexSet};

const UNSEEN: usize = usize::MAX;

pub fn is_well_separated(g: &Graph, params: &GoodnessParams) -> TriState {
    if let Some(c) = w2_violation(g, params) {
        return TriState::fails(c);
    }
    if let Some(c) = w1_violation(g, params) {
        return TriState::fails(c);
    }
    TriState::holds()
}

/// BFS distances from `src`, not exploring past `depth`.
fn bfs(g: &Graph, src: usize, depth: usize) -> Vec<usize> {
    let mut dist = vec![UNSEEN; g.n()];
    dist[src] = 0;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        if dist[u] == depth {
            continue;
        }
        for &w in g.neighbors(u) {
            if dist[w] == UNSEEN {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// A connected set of at most `5s` vertices holding `s` low vertices.
pub fn w1_violation(g: &Graph, params: &GoodnessParams) -> Option<VertexSet> {
    let s = params.s;
    if s == 0 {
        // "at most -1 low vertices" fails on any vertex at all
        return (g.n() > 0).then(|| VertexSet::new([0]));
    }
    let low = params.low_vertices(g);
    if low.len() < s {
        return None;
    }
    let limit = 5 * s;
    let close: Vec<Vec<usize>> = low
        .iter()
        .map(|&v| {
            let d = bfs(g, v, limit - 1);
            (0..low.len()).filter(|&j| d[low[j]] != UNSEEN).collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(s);
    search_terminals(g, &low, &close, s, limit, 0, &mut chosen)
}

fn search_terminals(
    g: &Graph,
    low: &[usize],
    close: &[Vec<usize>],
    s: usize,
    limit: usize,
    start: usize,
    chosen: &mut Vec<usize>,
) -> Option<VertexSet> {
    if chosen.len() == s {
        let terminals: Vec<usize> = chosen.iter().map(|&i| low[i]).collect();
        return steiner_tree(g, &terminals).filter(|t| t.len() <= limit);
    }
    for i in start..low.len() {
        if chosen.iter().all(|&c| close[c].binary_search(&i).is_ok()) {
            chosen.push(i);
            let r = search_terminals(g, low, close, s, limit, i + 1, chosen);
            chosen.pop();
            if r.is_some() {
                return r;
            }
        }
    }
    None
}

#[derive(Clone, Copy)]
enum Step {
    None,
    Base,
    Edge(usize),
    Split(usize),
}

/// Vertex set of a minimum Steiner tree for `terminals` (Dreyfus-Wagner), or
/// `None` when they are disconnected.
pub fn steiner_tree(g: &Graph, terminals: &[usize]) -> Option<VertexSet> {
    let t = terminals.len();
    if t == 0 {
        return Some(VertexSet::empty());
    }
    let n = g.n();
    let full = (1usize << t) - 1;
    let inf = usize::MAX / 4;
    let mut cost = vec![vec![inf; n]; full + 1];
    let mut step = vec![vec![Step::None; n]; full + 1];
    for mask in 1..=full {
        if mask.is_power_of_two() {
            let v = terminals[mask.trailing_zeros() as usize];
            cost[mask][v] = 0;
            step[mask][v] = Step::Base;
        } else {
            for v in 0..n {
                let mut sub = (mask - 1) & mask;
                while sub > 0 {
                    if sub < mask ^ sub {
                        let c = cost[sub][v] + cost[mask ^ sub][v];
                        if c < cost[mask][v] {
                            cost[mask][v] = c;
                            step[mask][v] = Step::Split(sub);
                        }
                    }
                    sub = (sub - 1) & mask;
                }
            }
        }
        // unit-weight Dijkstra from the current labels
        let mut heap: BinaryHeap<Reverse<(usize, usize)>> = (0..n)
            .filter(|&v| cost[mask][v] < inf)
            .map(|v| Reverse((cost[mask][v], v)))
            .collect();
        while let Some(Reverse((c, u))) = heap.pop() {
            if c > cost[mask][u] {
                continue;
            }
            for &w in g.neighbors(u) {
                if c + 1 < cost[mask][w] {
                    cost[mask][w] = c + 1;
                    step[mask][w] = Step::Edge(u);
                    heap.push(Reverse((c + 1, w)));
                }
            }
        }
    }
    let root = (0..n).min_by_key(|&v| cost[full][v])?;
    if cost[full][root] >= inf {
        return None;
    }
    let mut members = Vec::new();
    let mut stack = vec![(full, root)];
    while let Some((mask, v)) = stack.pop() {
        members.push(v);
        match step[mask][v] {
            Step::Edge(u) => stack.push((mask, u)),
            Step::Split(sub) => {
                stack.push((sub, v));
                stack.push((mask ^ sub, v));
            }
            Step::Base | Step::None => {}
        }
    }
    Some(VertexSet::new(members))
}

/// A loop at a low vertex, or a cycle of length `3..=12s` through one.
pub fn w2_violation(g: &Graph, params: &GoodnessParams) -> Option<VertexSet> {
    let low = params.low_vertices(g);
    if let Some(&v) = low.iter().find(|&&v| g.has_loop(v)) {
        return Some(VertexSet::new([v]));
    }
    let max_len = 12 * params.s;
    low.iter()
        .find_map(|&v| shortest_cycle_through(g, v, max_len))
}

/// Vertices of a shortest cycle of length `>= 3` through `v`, if one of
/// length at most `max_len` exists. Loops are ignored.
pub fn shortest_cycle_through(g: &Graph, v: usize, max_len: usize) -> Option<VertexSet> {
    if max_len < 3 {
        return None;
    }
    let n = g.n();
    let mut dist = vec![UNSEEN; n];
    let mut parent = vec![UNSEEN; n];
    let mut branch = vec![UNSEEN; n];
    dist[v] = 0;
    let mut queue = VecDeque::new();
    for &u in g.neighbors(v) {
        dist[u] = 1;
        parent[u] = v;
        branch[u] = u;
        queue.push_back(u);
    }
    let mut best: Option<(usize, usize, usize)> = None;
    while let Some(x) = queue.pop_front() {
        if let Some((len, _, _)) = best {
            // any later edge closes a cycle of length >= 2 dist[x]
            if 2 * dist[x] >= len {
                break;
            }
        }
        for &y in g.neighbors(x) {
            if y == v {
                continue;
            }
            if dist[y] == UNSEEN {
                if dist[x] + 1 < max_len {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    branch[y] = branch[x];
                    queue.push_back(y);
                }
            } else if branch[y] != branch[x] {
                let len = dist[x] + dist[y] + 1;
                if len <= max_len && best.map_or(true, |b| len < b.0) {
                    best = Some((len, x, y));
                }
            }
        }
    }
    let (_, x, y) = best?;
    let mut members = vec![v];
    for mut u in [x, y] {
        while u != v {
            members.push(u);
            u = parent[u];
        }
    }
    Some(VertexSet::new(members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::predicates::Truth;

    fn params(s: usize, threshold: f64) -> GoodnessParams {
        GoodnessParams::new(100, 0.1, s)
            .unwrap()
            .with_degree_threshold(threshold)
    }

    fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn complete_graph_is_separated() {
        let p = GoodnessParams::new(10, 0.3, 2).unwrap();
        assert!(is_well_separated(&complete(10), &p).is_holds());
    }

    #[test]
    fn triangle_fails_w2() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let r = is_well_separated(&g, &params(1, 2.0));
        assert_eq!(r.value, Truth::Fails);
        assert_eq!(r.certificate.unwrap(), VertexSet::new([0, 1, 2]));
    }

    #[test]
    fn loop_fails_w2() {
        let g = Graph::from_edges(2, [(0, 0)]).unwrap();
        assert_eq!(w2_violation(&g, &params(1, 1.0)), Some(VertexSet::new([0])));
    }

    #[test]
    fn w1_counts_low_vertices_in_small_trees() {
        let path = |n: usize| Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap();
        // the two ends are the only low vertices; s = 2 allows trees of 10
        assert_eq!(
            w1_violation(&path(6), &params(2, 1.0)),
            Some(VertexSet::new(0..6))
        );
        assert_eq!(
            w1_violation(&path(10), &params(2, 1.0)).map(|c| c.len()),
            Some(10)
        );
        assert_eq!(w1_violation(&path(11), &params(2, 1.0)), None);
        assert_eq!(
            w1_violation(&path(5), &params(1, 1.0)),
            Some(VertexSet::new([0]))
        );
    }

    #[test]
    fn steiner_star() {
        // spider with three legs of length 2 around 0
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert_eq!(steiner_tree(&g, &[2, 4, 6]).unwrap().len(), 7);
        assert_eq!(
            steiner_tree(&g, &[2, 4]).unwrap(),
            VertexSet::new([0, 1, 2, 3, 4])
        );
        let h = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert!(steiner_tree(&h, &[0, 2]).is_none());
    }

    #[test]
    fn shortest_cycle() {
        // 5-cycle 0..4 plus chord 1-3
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (1, 3)]).unwrap();
        assert_eq!(shortest_cycle_through(&g, 0, 12).unwrap().len(), 4);
        assert_eq!(
            shortest_cycle_through(&g, 2, 12).unwrap(),
            VertexSet::new([1, 2, 3])
        );
        assert!(shortest_cycle_through(&g, 0, 3).is_none());
    }
}
