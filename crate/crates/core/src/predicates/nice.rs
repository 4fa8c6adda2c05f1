//! Nice sets, good graphs and normal pairs.

use serde::{Deserialize, Serialize};

use super::{is_well_separated, GoodnessParams, TriState};
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

/// Conditions on minimal non-nice sets are decided exactly up to this size.
pub const GOOD_EXACT_CAP: usize = 18;

/// Which vertices may witness niceness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NiceScope {
    /// Every vertex of the graph; a vertex of `S` sees itself through a loop.
    #[default]
    All,
    /// Only vertices outside `S`.
    OutsideOnly,
}

/// Number of vertices with exactly one neighbour in `set`.
pub fn nice_count(g: &Graph, set: &VertexSet, scope: NiceScope) -> usize {
    (0..g.n())
        .filter(|&x| scope == NiceScope::All || !set.contains(x))
        .filter(|&x| g.closed_row(x).filter(|&u| set.contains(u)).count() == 1)
        .count()
}

fn nonempty(set: &VertexSet) -> Result<()> {
    if set.is_empty() {
        return Err(Error::param("niceness is defined for nonempty sets"));
    }
    Ok(())
}

pub fn is_nice(g: &Graph, set: &VertexSet) -> Result<bool> {
    is_nice_with(g, set, NiceScope::All)
}

pub fn is_nice_with(g: &Graph, set: &VertexSet, scope: NiceScope) -> Result<bool> {
    nonempty(set)?;
    Ok(nice_count(g, set, scope) >= 2)
}

pub fn is_nearly_nice(g: &Graph, set: &VertexSet) -> Result<bool> {
    is_nearly_nice_with(g, set, NiceScope::All)
}

pub fn is_nearly_nice_with(g: &Graph, set: &VertexSet, scope: NiceScope) -> Result<bool> {
    nonempty(set)?;
    Ok(nice_count(g, set, scope) >= 1)
}

/// All four goodness conditions. Few low-degree vertices and
/// well-separation are always decided; the conditions on minimal non-nice
/// and non-nearly-nice sets only for `n <= GOOD_EXACT_CAP`.
pub fn is_good(g: &Graph, params: &GoodnessParams) -> TriState {
    let n = g.n();
    let small: Vec<usize> = (0..n).filter(|&v| g.degree(v) < params.s).collect();
    let allowed = 1.0 / (params.p * (n as f64).ln());
    if n > 1 && small.len() as f64 > allowed {
        return TriState::fails(VertexSet::new(small));
    }
    let sep = is_well_separated(g, params);
    if sep.is_fails() {
        return sep;
    }
    if n > GOOD_EXACT_CAP {
        return TriState::unknown();
    }
    match nice_violation(g, params.s, params.k) {
        Some(c) => TriState::fails(c),
        None => TriState::holds(),
    }
}

/// A minimal non-nice set of size below `k + 1` with no non-expanding subset
/// of size at most `s - 1`, or a minimal non-nearly-nice one that is not
/// itself non-expanding of size at most `s - 1`.
fn nice_violation(g: &Graph, s: usize, k: f64) -> Option<VertexSet> {
    let n = g.n();
    let size = 1usize << n;
    let rows: Vec<u32> = (0..n)
        .map(|x| g.closed_row(x).fold(0u32, |m, u| m | 1 << u))
        .collect();
    // witnesses[S]: vertices with exactly one neighbour in S, capped at 2
    let mut witnesses = vec![0u8; size];
    let mut nbhd = vec![0u32; size];
    for set in 1..size {
        let low = set.trailing_zeros() as usize;
        nbhd[set] = nbhd[set & (set - 1)] | rows[low];
        let mut c = 0u8;
        for &r in &rows {
            if (r & set as u32).count_ones() == 1 {
                c += 1;
                if c == 2 {
                    break;
                }
            }
        }
        witnesses[set] = c;
    }
    let small_nonexp = |set: usize| {
        let k = set.count_ones();
        set != 0 && (k as usize) < s && nbhd[set].count_ones() < k
    };
    // subset closures of "non-nice", "non-nearly-nice", "small non-expanding"
    let mut bad_nice: Vec<bool> = (0..size).map(|t| t != 0 && witnesses[t] < 2).collect();
    let mut bad_near: Vec<bool> = (0..size).map(|t| t != 0 && witnesses[t] < 1).collect();
    let mut has_nonexp: Vec<bool> = (0..size).map(small_nonexp).collect();
    for bit in 0..n {
        let b = 1 << bit;
        for set in 0..size {
            if set & b != 0 {
                bad_nice[set] |= bad_nice[set ^ b];
                bad_near[set] |= bad_near[set ^ b];
                has_nonexp[set] |= has_nonexp[set ^ b];
            }
        }
    }
    let strictly_below = |table: &[bool], set: usize| {
        let mut rest = set;
        while rest != 0 {
            let b = rest & rest.wrapping_neg();
            if table[set ^ b] {
                return true;
            }
            rest ^= b;
        }
        false
    };
    (1..size)
        .filter(|&set| (set.count_ones() as f64) < k + 1.0)
        .filter(|&set| {
            let non_nice_min = witnesses[set] < 2 && !strictly_below(&bad_nice, set);
            let non_near_min = witnesses[set] < 1 && !strictly_below(&bad_near, set);
            (non_nice_min && !has_nonexp[set]) || (non_near_min && !small_nonexp(set))
        })
        .min_by_key(|&set| (set.count_ones(), set))
        .map(|set| VertexSet::from_mask(set as u64))
}

/// `g_next` extends `g` by one vertex whose neighbours in `g` all have
/// degree above `s`.
pub fn is_normal_pair(g: &Graph, g_next: &Graph, params: &GoodnessParams) -> Result<bool> {
    let m = g.n();
    if g_next.n() != m + 1 || g_next.prefix(m) != *g {
        return Err(Error::param(format!(
            "expected a one-vertex extension of a {m}-vertex graph, got {} vertices",
            g_next.n()
        )));
    }
    Ok(g_next
        .neighbors(m)
        .iter()
        .all(|&u| u >= m || g.degree(u) > params.s))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn counts() {
        let g = path(3);
        let s0 = VertexSet::new([0]);
        assert_eq!(nice_count(&g, &s0, NiceScope::All), 1);
        assert!(!is_nice(&g, &s0).unwrap());
        assert!(is_nearly_nice(&g, &s0).unwrap());
        // with a loop the endpoint sees itself
        let looped = Graph::from_edges(3, [(0, 1), (1, 2), (0, 0)]).unwrap();
        assert!(is_nice(&looped, &s0).unwrap());
        assert!(!is_nice_with(&looped, &s0, NiceScope::OutsideOnly).unwrap());
        // both leaves of a cherry
        assert!(!is_nearly_nice(&g, &VertexSet::new([0, 2])).unwrap());
        assert!(!is_nearly_nice(&Graph::empty(4), &VertexSet::new([1, 3])).unwrap());
        assert!(is_nice(&g, &VertexSet::empty()).is_err());
    }

    #[test]
    fn complete_graph_is_good() {
        let n = 10;
        let k10 =
            Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap();
        let p = GoodnessParams::new(n, 0.3, 1).unwrap();
        assert!(is_good(&k10, &p).is_holds());
    }

    #[test]
    fn many_isolated_vertices_fail() {
        let n = 12;
        let p = GoodnessParams::new(n, 0.5, 1).unwrap();
        let allowed = (1.0 / (0.5 * (n as f64).ln())).ceil() as usize;
        let g = Graph::from_edges(n, (allowed + 1..n - 1).map(|i| (i, i + 1))).unwrap();
        let r = is_good(&g, &p);
        assert_eq!(r.certificate.unwrap(), VertexSet::new(0..allowed + 1));
    }

    #[test]
    fn minimal_set_violations() {
        // a leaf is non-nice on its own and expands to its neighbour
        assert_eq!(nice_violation(&path(3), 3, 5.0), Some(VertexSet::new([0])));
        // isolated vertices are non-expanding singletons once s >= 2
        assert_eq!(nice_violation(&Graph::empty(2), 2, 5.0), None);
        assert_eq!(
            nice_violation(&Graph::empty(2), 1, 5.0),
            Some(VertexSet::new([0]))
        );
        assert_eq!(nice_violation(&path(3), 3, -0.5), None);
    }

    #[test]
    fn normal_pairs() {
        let g = path(3);
        let p = GoodnessParams::new(3, 0.5, 1).unwrap();
        let isolated = Graph::from_edges(4, [(0, 1), (1, 2)]).unwrap();
        assert!(is_normal_pair(&g, &isolated, &p).unwrap());
        let to_centre = Graph::from_edges(4, [(0, 1), (1, 2), (3, 1)]).unwrap();
        assert!(is_normal_pair(&g, &to_centre, &p).unwrap());
        let to_leaf = Graph::from_edges(4, [(0, 1), (1, 2), (3, 0)]).unwrap();
        assert!(!is_normal_pair(&g, &to_leaf, &p).unwrap());
        assert!(is_normal_pair(&g, &g, &p).is_err());
    }
}
