//! Hopcroft-Karp on the row/column bipartite graph B(G).
//!
//! Row `i` is joined to column `j` when `j` is a neighbour of `i` in G, and to
//! column `i` when `i` carries a loop. By the König-Ore deficiency formula the
//! maximum matching size equals `min_S (n - |S| + |N(S)|)`.

use std::collections::VecDeque;

use super::{Graph, VertexSet};

const NIL: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Column matched to each row.
    pub row_mate: Vec<Option<usize>>,
    /// Row matched to each column.
    pub col_mate: Vec<Option<usize>>,
    pub size: usize,
}

pub fn max_matching(g: &Graph) -> Matching {
    let rows: Vec<Vec<usize>> = (0..g.n()).map(|i| g.closed_row(i).collect()).collect();
    hopcroft_karp(&rows, g.n())
}

/// Size of a maximum matching of B(G) restricted to the rows in `rows`.
pub(crate) fn matching_size_on_rows(g: &Graph, rows: &[usize]) -> usize {
    let adj: Vec<Vec<usize>> = rows.iter().map(|&i| g.closed_row(i).collect()).collect();
    hopcroft_karp(&adj, g.n()).size
}

fn hopcroft_karp(rows: &[Vec<usize>], n_cols: usize) -> Matching {
    let n = rows.len();
    let mut row_mate = vec![NIL; n];
    let mut col_mate = vec![NIL; n_cols];
    let mut size = 0;

    // greedy warm start
    for i in 0..n {
        if let Some(&j) = rows[i].iter().find(|&&j| col_mate[j] == NIL) {
            row_mate[i] = j;
            col_mate[j] = i;
            size += 1;
        }
    }

    let mut dist = vec![0usize; n];
    let mut queue = VecDeque::new();
    let mut next = vec![0usize; n];
    loop {
        // BFS layers from free rows
        queue.clear();
        for i in 0..n {
            if row_mate[i] == NIL {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &rows[i] {
                let k = col_mate[j];
                if k == NIL {
                    found = true;
                } else if dist[k] == usize::MAX {
                    dist[k] = dist[i] + 1;
                    queue.push_back(k);
                }
            }
        }
        if !found {
            break;
        }
        next.iter_mut().for_each(|x| *x = 0);
        for i in 0..n {
            if row_mate[i] == NIL
                && augment(i, rows, &mut row_mate, &mut col_mate, &mut dist, &mut next)
            {
                size += 1;
            }
        }
    }

    let wrap = |v: Vec<usize>| v.into_iter().map(|x| (x != NIL).then_some(x)).collect();
    Matching {
        row_mate: wrap(row_mate),
        col_mate: wrap(col_mate),
        size,
    }
}

/// Iterative layered DFS from free row `root`.
fn augment(
    root: usize,
    rows: &[Vec<usize>],
    row_mate: &mut [usize],
    col_mate: &mut [usize],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    let mut stack = vec![root];
    while let Some(&i) = stack.last() {
        if next[i] == rows[i].len() {
            dist[i] = usize::MAX;
            stack.pop();
            continue;
        }
        let j = rows[i][next[i]];
        next[i] += 1;
        let k = col_mate[j];
        if k == NIL {
            // flip the path held on the stack
            let mut col = j;
            while let Some(r) = stack.pop() {
                let prev = row_mate[r];
                row_mate[r] = col;
                col_mate[col] = r;
                col = prev;
            }
            return true;
        }
        if dist[k] == dist[i] + 1 {
            stack.push(k);
        }
    }
    false
}

/// `min_S (n - |S| + |N(S)|)` via maximum matching.
pub fn combinatorial_rank(g: &Graph) -> usize {
    max_matching(g).size
}

/// A set attaining the minimum: the rows reachable from unmatched rows by
/// alternating paths.
pub fn min_deficiency_witness(g: &Graph) -> VertexSet {
    let m = max_matching(g);
    let n = g.n();
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| m.row_mate[i].is_none()).collect();
    for &i in &queue {
        seen[i] = true;
    }
    while let Some(i) = queue.pop_front() {
        for j in g.closed_row(i) {
            if let Some(k) = m.col_mate[j] {
                if !seen[k] {
                    seen[k] = true;
                    queue.push_back(k);
                }
            }
        }
    }
    VertexSet::new((0..n).filter(|&i| seen[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        assert_eq!(combinatorial_rank(&Graph::empty(5)), 0);
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(combinatorial_rank(&path), 2);
        let pm = Graph::from_edges(6, [(0, 1), (2, 3), (4, 5)]).unwrap();
        assert_eq!(combinatorial_rank(&pm), 6);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(combinatorial_rank(&star), 2);
        assert_eq!(
            combinatorial_rank(&Graph::from_edges(1, [(0, 0)]).unwrap()),
            1
        );
    }

    #[test]
    fn witnesses() {
        assert_eq!(
            min_deficiency_witness(&Graph::empty(3)),
            VertexSet::new([0, 1, 2])
        );
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(min_deficiency_witness(&path), VertexSet::new([0, 2]));
        let pm = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert!(min_deficiency_witness(&pm).is_empty());
    }

    #[test]
    fn matching_is_consistent() {
        let g = Graph::from_edges(
            7,
            [
                (0, 1),
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 0),
                (5, 5),
                (5, 6),
                (2, 6),
            ],
        )
        .unwrap();
        let m = max_matching(&g);
        let mut count = 0;
        for (i, c) in m.row_mate.iter().enumerate() {
            if let Some(j) = *c {
                assert!(g.has_edge(i, j));
                assert_eq!(m.col_mate[j], Some(i));
                count += 1;
            }
        }
        assert_eq!(count, m.size);
    }
}
