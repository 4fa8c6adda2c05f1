//! Minimal dependent row sets and the non-expanding sets inside them.
//!
//! A minimal dependent set of rows is the support of a support-minimal vector
//! `y` with `yᵀ Q = 0`. If the left null space has dimension `k`, such a vector
//! is determined up to scale by `k - 1` coordinates on which it vanishes, so
//! every minimal dependent set is found by solving for each `(k-1)`-subset of
//! the coordinates that some null vector uses.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{enumeration, NonExpandingWitness};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::graph::{graph_of, VertexSet};
use crate::matrix::{Coefficient, Domain, SparseSymMatrix};

/// Largest dimension accepted by [`classify_dependencies`].
pub const DEPENDENCY_CAP: usize = 22;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DependencyReport {
    pub dependent_rows: VertexSet,
    pub contained_witness: Option<NonExpandingWitness>,
    pub theorem_holds: bool,
}

fn check_cap(q: &SparseSymMatrix) -> Result<()> {
    if q.n() > DEPENDENCY_CAP {
        return Err(Error::Capacity {
            what: "matrix dimension for dependency classification",
            limit: DEPENDENCY_CAP,
            got: q.n(),
        });
    }
    Ok(())
}

/// Every minimal dependent set of rows of `q`, sorted.
pub fn minimal_dependent_sets(q: &SparseSymMatrix) -> Result<Vec<VertexSet>> {
    check_cap(q)?;
    let n = q.n();
    Ok(match q.domain() {
        Domain::Prime(f) => {
            let mut a = vec![vec![0u64; n]; n];
            for (i, j, c) in q.full_triplets() {
                if let Coefficient::Prime(v) = c {
                    a[i][j] = f.from_canonical(*v);
                }
            }
            circuits(f, a, n)
        }
        Domain::Rational => {
            let mut a = vec![vec![Rationals.zero(); n]; n];
            for (i, j, c) in q.full_triplets() {
                if let Coefficient::Rational(v) = c {
                    a[i][j] = v.clone();
                }
            }
            circuits(&Rationals, a, n)
        }
    })
}

/// One report per minimal dependent row set. The witness is the smallest
/// minimal non-expanding set of size at most `s - 1` inside the rows.
pub fn classify_dependencies(q: &SparseSymMatrix, s: usize) -> Result<Vec<DependencyReport>> {
    let sets = minimal_dependent_sets(q)?;
    let g = graph_of(q);
    Ok(sets
        .into_iter()
        .map(|rows| {
            let limit = s.saturating_sub(1).min(rows.len());
            let contained_witness = enumeration::enumerate(&g, limit, Some(&rows))
                .into_iter()
                .next();
            DependencyReport {
                theorem_holds: contained_witness.is_some(),
                dependent_rows: rows,
                contained_witness,
            }
        })
        .collect())
}

/// Basis of `{x : A x = 0}` for the `rows x cols` matrix `a`.
fn null_space<F: Field>(f: &F, mut a: Vec<Vec<F::Elem>>, cols: usize) -> Vec<Vec<F::Elem>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !f.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = f.inv(&a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.mul_sub(x, &factor, y);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![f.zero(); cols];
        v[free] = f.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(&a[row][free]);
        }
        basis.push(v);
    }
    basis
}

fn circuits<F: Field>(f: &F, q: Vec<Vec<F::Elem>>, n: usize) -> Vec<VertexSet> {
    // q is symmetric, so its left and right null spaces coincide
    let basis = null_space(f, q, n);
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let active: Vec<usize> = (0..n)
        .filter(|&c| basis.iter().any(|b| !f.is_zero(&b[c])))
        .collect();
    let mut found = BTreeSet::new();
    let mut pick: Vec<usize> = (0..k - 1).collect();
    if k - 1 > active.len() {
        return Vec::new();
    }
    loop {
        // combination over positions of `active`
        let zeros: Vec<usize> = pick.iter().map(|&i| active[i]).collect();
        // lambda with sum_a lambda_a basis[a][j] = 0 for j in zeros
        let system: Vec<Vec<F::Elem>> = zeros
            .iter()
            .map(|&j| basis.iter().map(|b| b[j].clone()).collect())
            .collect();
        let lambdas = null_space(f, system, k);
        if lambdas.len() == 1 {
            let lambda = &lambdas[0];
            let support = VertexSet::new((0..n).filter(|&c| {
                let mut acc = f.zero();
                for (l, b) in lambda.iter().zip(&basis) {
                    acc = f.add(&acc, &f.mul(l, &b[c]));
                }
                !f.is_zero(&acc)
            }));
            found.insert(support);
        }
        if !next_combination(&mut pick, active.len()) {
            break;
        }
    }
    found.into_iter().collect()
}

/// Advances `pick` to the next increasing sequence in `[0, m)`.
fn next_combination(pick: &mut [usize], m: usize) -> bool {
    let k = pick.len();
    let Some(i) = (0..k).rev().find(|&i| pick[i] < m - k + i) else {
        return false;
    };
    pick[i] += 1;
    for j in i + 1..k {
        pick[j] = pick[j - 1] + 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Coefficient {
        Coefficient::Prime(v)
    }

    #[test]
    fn full_rank_has_no_dependencies() {
        let q = SparseSymMatrix::from_triplets(2, Domain::default(), [(0, 1, p(4))]).unwrap();
        assert!(classify_dependencies(&q, 3).unwrap().is_empty());
    }

    #[test]
    fn zero_row() {
        let q = SparseSymMatrix::from_triplets(3, Domain::default(), [(0, 1, p(4)), (0, 0, p(1))])
            .unwrap();
        let reports = classify_dependencies(&q, 2).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].dependent_rows, VertexSet::new([2]));
        assert_eq!(
            reports[0].contained_witness.as_ref().unwrap().set,
            VertexSet::new([2])
        );
        assert!(reports[0].theorem_holds);
    }

    #[test]
    fn cherry_pair() {
        let q = SparseSymMatrix::from_triplets(3, Domain::default(), [(0, 1, p(3)), (1, 2, p(5))])
            .unwrap();
        let reports = classify_dependencies(&q, 3).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].dependent_rows, VertexSet::new([0, 2]));
        let w = reports[0].contained_witness.as_ref().unwrap();
        assert_eq!(
            (w.set.clone(), w.neighborhood.len()),
            (VertexSet::new([0, 2]), 1)
        );
        // with s = 2 only singletons are searched
        assert!(!classify_dependencies(&q, 2).unwrap()[0].theorem_holds);
    }

    #[test]
    fn circuits_of_a_rank_one_block() {
        // all-ones 3x3: any two rows are dependent
        let q = SparseSymMatrix::from_triplets(
            3,
            Domain::Rational,
            (0..3).flat_map(|i| {
                (i..3).map(move |j| {
                    (
                        i,
                        j,
                        Coefficient::Rational(num_bigint::BigInt::from(1).into()),
                    )
                })
            }),
        )
        .unwrap();
        let sets = minimal_dependent_sets(&q).unwrap();
        assert_eq!(
            sets,
            vec![
                VertexSet::new([0, 1]),
                VertexSet::new([0, 2]),
                VertexSet::new([1, 2])
            ]
        );
    }

    #[test]
    fn combinations() {
        let mut c = vec![0, 1];
        let mut seen = vec![c.clone()];
        while next_combination(&mut c, 4) {
            seen.push(c.clone());
        }
        assert_eq!(seen.len(), 6);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }
}
