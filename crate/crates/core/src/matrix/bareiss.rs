//! Fraction-free (Bareiss) elimination over the integers.
//!
//! Serves as the independent oracle for the sparse kernel: it shares no code
//! with it and never reduces modulo anything. Prime-field entries are read as
//! their canonical integer representatives, rational rows are cleared of
//! denominators first (row scaling preserves rank).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Coefficient, SparseSymMatrix};
use crate::error::{Error, Result};

pub const DEFAULT_ORACLE_CAP: usize = 64;

/// Rank over the rationals, for `n <= DEFAULT_ORACLE_CAP`.
pub fn rank_rational_oracle(q: &SparseSymMatrix) -> Result<usize> {
    rank_rational_oracle_with_cap(q, DEFAULT_ORACLE_CAP)
}

pub fn rank_rational_oracle_with_cap(q: &SparseSymMatrix, cap: usize) -> Result<usize> {
    let n = q.n();
    if n > cap {
        return Err(Error::Capacity {
            what: "matrix dimension for the rational oracle",
            limit: cap,
            got: n,
        });
    }
    let mut rows: Vec<Vec<Option<&Coefficient>>> = vec![vec![None; n]; n];
    for (i, j, c) in q.full_triplets() {
        rows[i][j] = Some(c);
    }
    let int_rows = rows.into_iter().map(|r| integer_row(&r)).collect();
    Ok(bareiss_rank(int_rows))
}

fn integer_row(row: &[Option<&Coefficient>]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, c| match c {
        Some(Coefficient::Rational(r)) => acc.lcm(r.denom()),
        _ => acc,
    });
    row.iter()
        .map(|c| match c {
            None => BigInt::zero(),
            Some(Coefficient::Prime(v)) => BigInt::from(*v),
            Some(Coefficient::Rational(r)) => r.numer() * (&lcm / r.denom()),
        })
        .collect()
}

/// Rank of an integer matrix by Bareiss elimination with column skipping.
/// Every intermediate entry is a minor of the input, so each division is exact.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut k = 0;
    for c in 0..cols {
        if k == m {
            break;
        }
        let Some(p) = (k..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(k, p);
        for i in k + 1..m {
            for j in c + 1..cols {
                let v = &a[k][c] * &a[i][j] - &a[i][c] * &a[k][j];
                debug_assert!((&v % &prev).is_zero());
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[k][c].clone();
        k += 1;
    }
    k
}
