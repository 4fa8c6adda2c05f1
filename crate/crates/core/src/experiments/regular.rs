//! Random `d`-regular simple graphs by the configuration model.

use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{derive_seed, rng_from_seed};

/// Pairings tried before giving up.
pub const RETRY_BUDGET: usize = 100_000;

/// Uniform random `d`-regular simple graph on `n` vertices: stubs are paired
/// uniformly and pairings with a loop or a repeated edge are rejected.
pub fn random_regular_graph(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n || (n * d) % 2 == 1 {
        return Err(Error::param(format!(
            "no {d}-regular graph on {n} vertices"
        )));
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for attempt in 0..RETRY_BUDGET {
        let mut rng = rng_from_seed(derive_seed(seed, attempt as u64));
        stubs.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = stubs
            .chunks_exact(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect();
        if edges.iter().any(|&(a, b)| a == b) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return Graph::from_edges(n, edges);
    }
    Err(Error::Sampling(format!(
        "no simple {d}-regular pairing on {n} vertices within {RETRY_BUDGET} attempts"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_and_simplicity() {
        for (n, d) in [(10, 3), (40, 2), (7, 6), (12, 0)] {
            let g = random_regular_graph(n, d, 11).unwrap();
            assert!(
                (0..n).all(|v| g.degree(v) == d && !g.has_loop(v)),
                "n={n} d={d}"
            );
            assert_eq!(g.edge_count(), n * d / 2);
        }
        assert!(random_regular_graph(5, 3, 1).is_err());
        assert!(random_regular_graph(4, 4, 1).is_err());
    }

    #[test]
    fn seeded() {
        let a = random_regular_graph(30, 3, 5).unwrap();
        assert_eq!(a, random_regular_graph(30, 3, 5).unwrap());
    }
}
