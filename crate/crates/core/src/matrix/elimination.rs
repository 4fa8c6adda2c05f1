//! Sparse Gaussian elimination with Markowitz-style pivoting.
//!
//! Each step takes the active row with the fewest nonzeros and, inside it, the
//! column with the fewest active nonzeros; ties go to the lowest index. Once
//! the active submatrix becomes dense enough the remainder is copied into a
//! dense array and finished there.

use crate::field::Field;

/// Active fill ratio at which the kernel switches to dense elimination.
pub const DENSE_SWITCH_DENSITY: f64 = 0.08;

/// Below this many active rows the kernel never switches.
const DENSE_SWITCH_MIN_ROWS: usize = 48;

type Row<E> = Vec<(u32, E)>;

pub(crate) fn rank<F: Field>(
    field: &F,
    n_rows: usize,
    n_cols: usize,
    mut triplets: Vec<(u32, u32, F::Elem)>,
) -> usize {
    triplets.sort_by_key(|t| (t.0, t.1));
    let mut rows: Vec<Row<F::Elem>> = vec![Vec::new(); n_rows];
    for (i, j, v) in triplets {
        let row = &mut rows[i as usize];
        match row.last_mut() {
            Some(last) if last.0 == j => last.1 = field.add(&last.1, &v),
            _ => row.push((j, v)),
        }
    }
    for row in rows.iter_mut() {
        row.retain(|(_, v)| !field.is_zero(v));
    }

    let mut col_count = vec![0u32; n_cols];
    let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); n_cols];
    let mut active_nnz = 0usize;
    for (i, row) in rows.iter().enumerate() {
        for (j, _) in row {
            col_count[*j as usize] += 1;
            col_rows[*j as usize].push(i as u32);
        }
        active_nnz += row.len();
    }

    let mut row_done = vec![false; n_rows];
    let mut active_rows = n_rows;
    let mut active_cols = n_cols;
    let mut rank = 0usize;
    // scratch marker so a row listed twice in a column list is updated once
    let mut stamp = vec![u32::MAX; n_rows];
    let mut step = 0u32;

    loop {
        // pivot row: fewest nonzeros, lowest index; drop empty rows on the way
        let mut best: Option<(usize, usize)> = None;
        for i in 0..n_rows {
            if row_done[i] {
                continue;
            }
            let len = rows[i].len();
            if len == 0 {
                row_done[i] = true;
                active_rows -= 1;
                continue;
            }
            if best.map_or(true, |(_, l)| len < l) {
                best = Some((i, len));
                if len == 1 {
                    break;
                }
            }
        }
        let Some((r, _)) = best else { break };

        if active_rows >= DENSE_SWITCH_MIN_ROWS
            && active_nnz as f64 > DENSE_SWITCH_DENSITY * active_rows as f64 * active_cols as f64
        {
            return rank + finish_dense(field, &rows, &row_done, n_cols);
        }

        let (c, pivot) = rows[r]
            .iter()
            .min_by_key(|(j, _)| (col_count[*j as usize], *j))
            .map(|(j, v)| (*j, v.clone()))
            .expect("pivot row is nonempty");
        let pivot_inv = field.inv(&pivot);
        let pivot_row = std::mem::take(&mut rows[r]);
        row_done[r] = true;
        active_rows -= 1;
        active_cols -= 1;
        active_nnz -= pivot_row.len();
        for (j, _) in &pivot_row {
            col_count[*j as usize] -= 1;
        }
        rank += 1;

        step += 1;
        let targets = std::mem::take(&mut col_rows[c as usize]);
        for &i in &targets {
            let i = i as usize;
            if row_done[i] || stamp[i] == step {
                continue;
            }
            stamp[i] = step;
            let Ok(pos) = rows[i].binary_search_by_key(&c, |e| e.0) else {
                continue;
            };
            let factor = field.mul(&rows[i][pos].1, &pivot_inv);
            let old = std::mem::take(&mut rows[i]);
            let old_len = old.len();
            let merged =
                eliminate_row(field, old, &pivot_row, &factor, c, |j, event| match event {
                    Change::Filled => {
                        col_count[j as usize] += 1;
                        col_rows[j as usize].push(i as u32);
                    }
                    Change::Cancelled => col_count[j as usize] -= 1,
                });
            active_nnz = active_nnz + merged.len() - old_len;
            rows[i] = merged;
        }
    }
    rank
}

enum Change {
    Filled,
    Cancelled,
}

/// `row - factor * pivot_row`, dropping column `pivot_col` and exact zeros.
fn eliminate_row<F: Field>(
    field: &F,
    row: Row<F::Elem>,
    pivot_row: &Row<F::Elem>,
    factor: &F::Elem,
    pivot_col: u32,
    mut on_change: impl FnMut(u32, Change),
) -> Row<F::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot_row.len());
    let mut a = row.into_iter().peekable();
    let mut b = pivot_row.iter().peekable();
    loop {
        match (a.peek(), b.peek()) {
            (Some(x), Some(y)) if x.0 < y.0 => out.push(a.next().unwrap()),
            (Some(x), Some(y)) if x.0 > y.0 => {
                let (j, v) = b.next().unwrap();
                on_change(*j, Change::Filled);
                out.push((*j, field.neg(&field.mul(factor, v))));
            }
            (Some(_), Some(_)) => {
                let (j, x) = a.next().unwrap();
                let (_, y) = b.next().unwrap();
                if j == pivot_col {
                    on_change(j, Change::Cancelled);
                    continue;
                }
                let v = field.mul_sub(&x, factor, y);
                if field.is_zero(&v) {
                    on_change(j, Change::Cancelled);
                } else {
                    out.push((j, v));
                }
            }
            (Some(_), None) => out.push(a.next().unwrap()),
            (None, Some(_)) => {
                let (j, v) = b.next().unwrap();
                on_change(*j, Change::Filled);
                out.push((*j, field.neg(&field.mul(factor, v))));
            }
            (None, None) => break,
        }
    }
    out
}

fn finish_dense<F: Field>(
    field: &F,
    rows: &[Row<F::Elem>],
    row_done: &[bool],
    n_cols: usize,
) -> usize {
    let live: Vec<usize> = (0..rows.len())
        .filter(|&i| !row_done[i] && !rows[i].is_empty())
        .collect();
    let mut col_map = vec![u32::MAX; n_cols];
    let mut width = 0usize;
    for &i in &live {
        for (j, _) in &rows[i] {
            if col_map[*j as usize] == u32::MAX {
                col_map[*j as usize] = width as u32;
                width += 1;
            }
        }
    }
    let dense: Vec<Vec<F::Elem>> = live
        .iter()
        .map(|&i| {
            let mut d = vec![field.zero(); width];
            for (j, v) in &rows[i] {
                d[col_map[*j as usize] as usize] = v.clone();
            }
            d
        })
        .collect();
    dense_rank(field, dense, width)
}

/// Rows reduced together against each echelon row.
const DENSE_BLOCK: usize = 32;

/// Row-echelon rank of a dense matrix.
///
/// Left-looking: each block of input rows is reduced against every echelon
/// row found so far, then within itself; survivors join the echelon basis.
pub(crate) fn dense_rank<F: Field>(field: &F, mut a: Vec<Vec<F::Elem>>, cols: usize) -> usize {
    // (pivot column, inverse of the pivot, row)
    let mut basis: Vec<(usize, F::Elem, Vec<F::Elem>)> = Vec::new();
    for block in a.chunks_mut(DENSE_BLOCK) {
        for (p, inv, b) in &basis {
            for row in block.iter_mut() {
                reduce(field, row, *p, inv, b);
            }
        }
        let start = basis.len();
        for slot in block.iter_mut() {
            let mut row = std::mem::take(slot);
            for (p, inv, b) in &basis[start..] {
                reduce(field, &mut row, *p, inv, b);
            }
            if let Some(p) = row[..cols].iter().position(|v| !field.is_zero(v)) {
                let inv = field.inv(&row[p]);
                basis.push((p, inv, row));
            }
        }
    }
    basis.len()
}

fn reduce<F: Field>(field: &F, row: &mut [F::Elem], p: usize, inv: &F::Elem, b: &[F::Elem]) {
    if field.is_zero(&row[p]) {
        return;
    }
    let f = field.mul(&row[p], inv);
    field.row_mul_sub(&mut row[p..], &f, &b[p..]);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sparse_and_dense_agree_on_random_pattern_matrices() {
        let f = PrimeField::new(1_000_003).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let r = rng.random_range(1..40);
            let c = rng.random_range(1..40);
            let p = rng.random_range(0.02..0.5);
            let mut trip = Vec::new();
            let mut dense = vec![vec![0u64; c]; r];
            for i in 0..r {
                for j in 0..c {
                    if rng.random_bool(p) {
                        let v = f.from_canonical(rng.random_range(1..1_000_003));
                        trip.push((i as u32, j as u32, v));
                        dense[i][j] = v;
                    }
                }
            }
            assert_eq!(rank(&f, r, c, trip), dense_rank(&f, dense, c));
        }
    }

    #[test]
    fn duplicate_triplets_are_summed() {
        let f = PrimeField::new(7).unwrap();
        let one = f.from_canonical(1);
        let six = f.from_canonical(6);
        // (0,0) gets 1 + 6 = 0
        assert_eq!(rank(&f, 1, 1, vec![(0, 0, one), (0, 0, six)]), 0);
    }

    #[test]
    fn exact_cancellation_is_tracked() {
        // rows (1,1,0), (1,1,1), (0,0,1): rank 2 with a cancellation in col 1
        let f = PrimeField::default();
        let o = f.from_canonical(1);
        let t = vec![
            (0, 0, o),
            (0, 1, o),
            (1, 0, o),
            (1, 1, o),
            (1, 2, o),
            (2, 2, o),
        ];
        assert_eq!(rank(&f, 3, 3, t), 2);
    }
}
