//! Non-expanding sets, unobstructed sets and the `T / T1` decomposition.

mod decomposition;
mod dependencies;
mod enumeration;
mod unobstructed;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

pub use decomposition::{build_decomposition, predicted_rank_structural, StructureDecomposition};
pub use dependencies::{
    classify_dependencies, minimal_dependent_sets, DependencyReport, DEPENDENCY_CAP,
};
pub use unobstructed::{
    is_saturated, is_unobstructed, largest_unobstructed_size, largest_unobstructed_size_exact,
    UMode, UnobstructedSize,
};

/// Default bound on the size of enumerated non-expanding sets.
pub const ENUMERATION_CAP: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonExpandingWitness {
    pub set: VertexSet,
    pub neighborhood: VertexSet,
    pub minimal: bool,
}

impl NonExpandingWitness {
    /// Recomputes the neighbourhood and the minimality claim from `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        if self.set.is_empty() || g.neighborhood(&self.set) != self.neighborhood {
            return false;
        }
        if self.neighborhood.len() >= self.set.len() {
            return false;
        }
        !self.minimal || enumeration::enumerate(g, self.set.len() - 1, Some(&self.set)).is_empty()
    }
}

/// Minimal non-expanding sets of size at most `max_size`, sorted by size and
/// then lexicographically.
pub fn minimal_non_expanding_sets(g: &Graph, max_size: usize) -> Result<Vec<NonExpandingWitness>> {
    minimal_non_expanding_sets_with_cap(g, max_size, ENUMERATION_CAP)
}

pub fn minimal_non_expanding_sets_with_cap(
    g: &Graph,
    max_size: usize,
    cap: usize,
) -> Result<Vec<NonExpandingWitness>> {
    if max_size > cap {
        return Err(Error::Capacity {
            what: "non-expanding set size",
            limit: cap,
            got: max_size,
        });
    }
    Ok(enumeration::enumerate(g, max_size, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sets(list: &[NonExpandingWitness]) -> Vec<Vec<usize>> {
        list.iter().map(|w| w.set.as_slice().to_vec()).collect()
    }

    #[test]
    fn enumeration_examples() {
        let g = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(
            sets(&minimal_non_expanding_sets(&g, 3).unwrap()),
            vec![vec![2]]
        );
        let cherry = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(minimal_non_expanding_sets(&cherry, 1).unwrap().is_empty());
        let found = minimal_non_expanding_sets(&cherry, 2).unwrap();
        assert_eq!(sets(&found), vec![vec![0, 2]]);
        assert_eq!(found[0].neighborhood, VertexSet::new([1]));
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(minimal_non_expanding_sets(&k4, 4).unwrap().is_empty());
        assert!(minimal_non_expanding_sets(&k4, 7).is_err());
        for w in &found {
            assert!(w.verify(&cherry));
        }
    }

    #[test]
    fn loops_are_self_neighbours() {
        // 0 and 2 hang off 1, 2 also carries a loop: N({0,2}) = {1,2}
        let g = Graph::from_edges(3, [(0, 1), (1, 2), (2, 2)]).unwrap();
        assert!(minimal_non_expanding_sets(&g, 3).unwrap().is_empty());
    }
}
