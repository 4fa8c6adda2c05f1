//! Local sparsity and small-set expansion.

use super::{boundary_edges, internal_edges, is_well_separated, GoodnessParams, TriState};
use crate::graph::{Graph, VertexSet};

/// Graphs up to this size are decided by subset enumeration.
pub const EXACT_PREDICATE_CAP: usize = 22;

/// Minimum degree of the core that any subgraph of average degree `>= 8`
/// must contain: deleting a vertex of degree at most 4 keeps `e >= 4|S|`.
const CORE_DEGREE: usize = 5;

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | 1 << u))
        .collect()
}

/// Number of edges inside every subset mask (loops excluded).
fn internal_edge_table(adj: &[u32]) -> Vec<u16> {
    let mut e = vec![0u16; 1 << adj.len()];
    for s in 1..e.len() {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        e[s] = e[rest] + (adj[low] & rest as u32).count_ones() as u16;
    }
    e
}

/// Every subgraph on at most `small_set_bound` vertices has average degree
/// below 8, i.e. fewer than `4|S|` internal edges.
pub fn is_locally_sparse(g: &Graph, params: &GoodnessParams) -> TriState {
    let n = g.n();
    let bound = params.small_set_size(n);
    if n <= EXACT_PREDICATE_CAP {
        let e = internal_edge_table(&adjacency_masks(g));
        let worst = (1..e.len())
            .filter(|&s| {
                (s.count_ones() as usize) <= bound && e[s] as usize >= 4 * s.count_ones() as usize
            })
            .min_by_key(|&s| (s.count_ones(), s));
        return match worst {
            Some(s) => TriState::fails(VertexSet::from_mask(s as u64)),
            None => TriState::holds(),
        };
    }
    let core = core_vertices(g, CORE_DEGREE);
    if core.is_empty() {
        return TriState::holds();
    }
    // search for a dense set among the small core components by greedy peeling
    for comp in components_within(g, &core) {
        if let Some(c) = densest_peel(g, &comp, bound) {
            return TriState::fails(c);
        }
    }
    TriState::unknown()
}

/// Vertices of the `k`-core (loops ignored).
fn core_vertices(g: &Graph, k: usize) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.neighbors(v).len()).collect();
    let mut removed = vec![false; n];
    let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] < k).collect();
    for &v in &stack {
        removed[v] = true;
    }
    while let Some(v) = stack.pop() {
        for &u in g.neighbors(v) {
            if !removed[u] {
                deg[u] -= 1;
                if deg[u] < k {
                    removed[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    (0..n).filter(|&v| !removed[v]).collect()
}

/// Connected components of the subgraph induced on `members`.
fn components_within(g: &Graph, members: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.n()];
    for &v in members {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for &v in members {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        let mut comp = vec![v];
        let mut i = 0;
        while i < comp.len() {
            let u = comp[i];
            i += 1;
            for &w in g.neighbors(u) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Peels minimum-degree vertices off `comp` and returns the first
/// intermediate set with at most `bound` vertices and `>= 4|S|` edges.
fn densest_peel(g: &Graph, comp: &[usize], bound: usize) -> Option<VertexSet> {
    let mut set = VertexSet::new(comp.iter().copied());
    let mut edges = internal_edges(g, &set);
    loop {
        if set.is_empty() {
            return None;
        }
        if set.len() <= bound && edges >= 4 * set.len() {
            return Some(set);
        }
        let (v, d) = set
            .iter()
            .map(|v| {
                (
                    v,
                    g.neighbors(v).iter().filter(|&&u| set.contains(u)).count(),
                )
            })
            .min_by_key(|&(v, d)| (d, v))?;
        edges -= d;
        set = set.difference(&VertexSet::new([v]));
    }
}

/// Every `S` with `|S| <= small_set_bound` has at least `|S|` edges to its
/// complement, or contains a nonempty `S'` with `|S'| <= s - 1` and at most
/// `|S'| - 1` such edges.
pub fn is_small_set_expander(g: &Graph, params: &GoodnessParams) -> TriState {
    let n = g.n();
    if n <= EXACT_PREDICATE_CAP {
        return match expander_violation(g, params.s, params.small_set_size(n)) {
            Some(c) => TriState::fails(c),
            None => TriState::holds(),
        };
    }
    // a small component is its own complement-free piece; decide it exactly
    let bound = params.small_set_size(n);
    let all: Vec<usize> = (0..n).collect();
    for comp in components_within(g, &all) {
        if comp.len() <= bound.min(EXACT_PREDICATE_CAP) {
            let local = induced(g, &comp);
            if let Some(c) = expander_violation(&local, params.s, bound) {
                return TriState::fails(VertexSet::new(c.iter().map(|i| comp[i])));
            }
        }
    }
    if is_locally_sparse(g, params).is_holds() && is_well_separated(g, params).is_holds() {
        TriState::holds()
    } else {
        TriState::unknown()
    }
}

fn induced(g: &Graph, members: &[usize]) -> Graph {
    let pos = |v: usize| members.binary_search(&v).ok();
    let edges = members.iter().enumerate().flat_map(|(i, &v)| {
        let lp = g.has_loop(v).then_some((i, i));
        lp.into_iter().chain(
            g.neighbors(v)
                .iter()
                .filter_map(move |&u| pos(u).map(|j| (i, j))),
        )
    });
    Graph::from_edges(members.len(), edges).expect("indices are local")
}

/// Smallest violating set by exhaustive search; `g.n() <= 22`.
fn expander_violation(g: &Graph, s: usize, bound: usize) -> Option<VertexSet> {
    let n = g.n();
    let adj = adjacency_masks(g);
    let e = internal_edge_table(&adj);
    let deg: Vec<u32> = adj.iter().map(|m| m.count_ones()).collect();
    let size = 1usize << n;
    let mut sum_deg = vec![0u32; size];
    for set in 1..size {
        sum_deg[set] = sum_deg[set & (set - 1)] + deg[set.trailing_zeros() as usize];
    }
    let boundary = |set: usize| sum_deg[set] - 2 * e[set] as u32;
    // escape[S]: S contains a nonempty S' with |S'| <= s-1 and boundary <= |S'|-1
    let mut escape: Vec<bool> = (0..size)
        .map(|set| {
            let k = set.count_ones();
            set != 0 && (k as usize) < s && boundary(set) < k
        })
        .collect();
    for bit in 0..n {
        let b = 1 << bit;
        for set in 0..size {
            if set & b != 0 && escape[set ^ b] {
                escape[set] = true;
            }
        }
    }
    (1..size)
        .filter(|&set| {
            let k = set.count_ones();
            (k as usize) <= bound && boundary(set) < k && !escape[set]
        })
        .min_by_key(|&set| (set.count_ones(), set))
        .map(|set| VertexSet::from_mask(set as u64))
}

/// Whether `set` is a small-set-expansion violation: fewer than `|S|`
/// boundary edges and no escape subset (checked for `|S| <= 22`).
pub fn violates_expansion(g: &Graph, set: &VertexSet, s: usize) -> bool {
    let k = set.len();
    if k == 0 || boundary_edges(g, set) >= k {
        return false;
    }
    // no escape subset of size <= s - 1
    let members = set.as_slice();
    if k > EXACT_PREDICATE_CAP {
        return false;
    }
    (1u32..1 << k).all(|mask| {
        if mask.count_ones() as usize >= s {
            return true;
        }
        let sub = VertexSet::new((0..k).filter(|b| mask >> b & 1 == 1).map(|b| members[b]));
        boundary_edges(g, &sub) >= sub.len()
    })
}
