//! Subset enumeration oracle for the combinatorial rank.

use super::Graph;
use crate::error::{Error, Result};

/// Largest graph the 2^n enumerators accept.
pub const BRUTE_FORCE_CAP: usize = 22;

pub(crate) fn check_cap(g: &Graph, what: &'static str) -> Result<()> {
    if g.n() > BRUTE_FORCE_CAP {
        return Err(Error::Capacity {
            what,
            limit: BRUTE_FORCE_CAP,
            got: g.n(),
        });
    }
    Ok(())
}

/// Bitmask of `N(S)` for every subset mask `S` of `[0, n)`.
pub(crate) fn neighborhood_masks(g: &Graph) -> Vec<u32> {
    let n = g.n();
    debug_assert!(n <= BRUTE_FORCE_CAP);
    let single: Vec<u32> = (0..n)
        .map(|v| g.closed_row(v).fold(0u32, |m, u| m | 1 << u))
        .collect();
    let mut nb = vec![0u32; 1 << n];
    for s in 1..nb.len() {
        let low = s.trailing_zeros() as usize;
        nb[s] = nb[s & (s - 1)] | single[low];
    }
    nb
}

/// `min_S (n - |S| + |N(S)|)` by visiting all `2^n` subsets.
pub fn brute_force_combinatorial_rank(g: &Graph) -> Result<usize> {
    check_cap(g, "vertex count for subset enumeration")?;
    let n = g.n();
    let nb = neighborhood_masks(g);
    Ok(nb
        .iter()
        .enumerate()
        .map(|(s, m)| n - (s as u32).count_ones() as usize + m.count_ones() as usize)
        .min()
        .unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(brute_force_combinatorial_rank(&star).unwrap(), 2);
        assert_eq!(
            brute_force_combinatorial_rank(&Graph::from_edges(1, [(0, 0)]).unwrap()).unwrap(),
            1
        );
        assert_eq!(brute_force_combinatorial_rank(&Graph::empty(0)).unwrap(), 0);
        assert!(brute_force_combinatorial_rank(&Graph::empty(23)).is_err());
    }
}
