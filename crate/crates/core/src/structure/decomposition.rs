//! The `T / T1` decomposition and the structural rank `n - |T \ T1|`.

use serde::{Deserialize, Serialize};

use super::minimal_non_expanding_sets;
use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureDecomposition {
    /// Union of the minimal non-expanding sets of size at most `s - 1`.
    #[serde(rename = "T")]
    pub t: VertexSet,
    #[serde(rename = "N_T")]
    pub n_t: VertexSet,
    #[serde(rename = "T1")]
    pub t1: VertexSet,
    /// `(x, t)` pairs matching each vertex of `N(T)` to a vertex of `T1`,
    /// sorted by `x`.
    pub matching: Vec<(usize, usize)>,
    pub s: usize,
    /// Whether `N(T)` and `T` are disjoint.
    pub disjoint: bool,
}

impl StructureDecomposition {
    pub fn predicted_rank(&self, n: usize) -> usize {
        n - self.t.difference(&self.t1).len()
    }

    /// Checks that the matching is a bijection `N(T) -> T1` along edges of `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let xs = VertexSet::new(self.matching.iter().map(|m| m.0));
        let ts = VertexSet::new(self.matching.iter().map(|m| m.1));
        xs == self.n_t
            && ts == self.t1
            && xs.len() == self.matching.len()
            && ts.len() == self.matching.len()
            && self.t1.is_subset(&self.t)
            && self.matching.iter().all(|&(x, t)| g.has_edge(x, t))
    }
}

/// Greedy construction: repeatedly take the lowest unused vertex of `T` with
/// exactly one unused neighbour in `N(T)` and match the two.
pub fn build_decomposition(g: &Graph, s: usize) -> Result<StructureDecomposition> {
    let max_size = s.saturating_sub(1);
    let sets = minimal_non_expanding_sets(g, max_size)?;
    let t = VertexSet::new(sets.iter().flat_map(|w| w.set.iter()));
    let n_t = g.neighborhood(&t);
    let disjoint = t.intersection(&n_t).is_empty();

    let n = g.n();
    let mut in_nt = vec![false; n];
    for x in n_t.iter() {
        in_nt[x] = true;
    }
    let mut used = vec![false; n];
    let mut used_t = vec![false; n];
    let mut matching = Vec::with_capacity(n_t.len());
    while matching.len() < n_t.len() {
        let pick = t.iter().filter(|&v| !used_t[v]).find_map(|v| {
            let mut free = g.closed_row(v).filter(|&x| in_nt[x] && !used[x]);
            match (free.next(), free.next()) {
                (Some(x), None) => Some((v, x)),
                _ => None,
            }
        });
        let Some((v, x)) = pick else {
            return Err(Error::StructuralFailure {
                residual: n_t.iter().filter(|&x| !used[x]).collect(),
            });
        };
        used_t[v] = true;
        used[x] = true;
        used[v] = true;
        matching.push((x, v));
    }
    matching.sort_unstable();
    let t1 = VertexSet::new(matching.iter().map(|m| m.1));
    Ok(StructureDecomposition {
        t,
        n_t,
        t1,
        matching,
        s,
        disjoint,
    })
}

/// `n - |T \ T1|`.
pub fn predicted_rank_structural(g: &Graph, s: usize) -> Result<usize> {
    Ok(build_decomposition(g, s)?.predicted_rank(g.n()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_vertices() {
        let g = Graph::from_edges(5, [(0, 1), (1, 2)]).unwrap();
        let d = build_decomposition(&g, 2).unwrap();
        assert_eq!(d.t, VertexSet::new([3, 4]));
        assert!(d.n_t.is_empty() && d.t1.is_empty());
        assert_eq!(d.predicted_rank(5), 3);
    }

    #[test]
    fn cherry() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let d = build_decomposition(&g, 3).unwrap();
        assert_eq!(d.t, VertexSet::new([0, 2]));
        assert_eq!(d.n_t, VertexSet::new([1]));
        assert_eq!(d.t1, VertexSet::new([0]));
        assert_eq!(d.matching, vec![(1, 0)]);
        assert!(d.disjoint && d.verify(&g));
        assert_eq!(predicted_rank_structural(&g, 3).unwrap(), 2);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(
            json,
            r#"{"T":[0,2],"N_T":[1],"T1":[0],"matching":[[1,0]],"s":3,"disjoint":true}"#
        );
    }

    #[test]
    fn complete_graph() {
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(predicted_rank_structural(&k4, 5).unwrap(), 4);
    }

    #[test]
    fn stall_reports_residual() {
        // 0, 1 and 2 all hang off both 4 and 5
        let g = Graph::from_edges(6, [(0, 4), (0, 5), (1, 4), (1, 5), (2, 4), (2, 5)]).unwrap();
        match build_decomposition(&g, 4) {
            Err(Error::StructuralFailure { residual }) => assert_eq!(residual, vec![4, 5]),
            other => panic!("{other:?}"),
        }
    }
}
