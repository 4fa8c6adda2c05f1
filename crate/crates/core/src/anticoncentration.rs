//! Monte Carlo estimates of linear and quadratic Littlewood-Offord
//! probabilities.
//!
//! Each variable is independently `0` with probability `1 - rho` and a
//! nonzero value `w_i` with probability `rho`; the form is evaluated in
//! GF(q). Trials run in fixed batches with derived seeds, so an estimate
//! depends only on `(input, rho, trials, seed)`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::matrix::{Coefficient, Domain, SparseSymMatrix};
use crate::rng::{derive_seed, rng_from_seed};

const TRIAL_BATCH: u64 = 4096;

/// Largest matrix accepted by [`cofactor_grid`].
pub const COFACTOR_CAP: usize = 24;

/// Distribution of the nonzero value taken by a selected variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightLaw {
    /// Always 1.
    #[default]
    One,
    /// +1 or -1 with equal probability.
    Sign,
    /// Uniform over the nonzero field elements.
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LOEstimate {
    pub hit_probability: f64,
    pub std_error: f64,
    /// `(D rho)^{-1/2}` for linear forms, `(q rho)^{-1/4}` for quadratic ones.
    pub bound_value: f64,
    pub trials: u64,
    pub hits: u64,
    /// `D` for linear forms, the grid's `q` for quadratic ones.
    pub size_parameter: usize,
}

impl LOEstimate {
    fn new(hits: u64, trials: u64, bound_value: f64, size_parameter: usize) -> Self {
        let p = hits as f64 / trials as f64;
        LOEstimate {
            hit_probability: p,
            std_error: (p * (1.0 - p) / trials as f64).sqrt(),
            bound_value,
            trials,
            hits,
            size_parameter,
        }
    }

    /// `hit_probability / bound_value`.
    pub fn scaled(&self) -> f64 {
        self.hit_probability / self.bound_value
    }
}

/// Square array of field coefficients `a_ij`, stored as canonical residues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientGrid {
    field: PrimeField,
    n: usize,
    entries: Vec<u64>,
}

impl CoefficientGrid {
    /// `entries` in row-major order, each reduced mod q.
    pub fn new(field: PrimeField, n: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::param(format!(
                "grid of order {n} needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let q = field.modulus();
        Ok(CoefficientGrid {
            field,
            n,
            entries: entries.into_iter().map(|x| x % q).collect(),
        })
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Result<Self> {
        let f = PrimeField::default();
        let q = f.modulus() as i128;
        Self::new(
            f,
            n,
            entries
                .iter()
                .map(|&x| (x as i128).rem_euclid(q) as u64)
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    /// Largest `q` such that at least `q` columns each have at least `q`
    /// nonzero entries.
    pub fn q_parameter(&self) -> usize {
        let mut counts: Vec<usize> = (0..self.n)
            .map(|j| (0..self.n).filter(|&i| self.get(i, j) != 0).count())
            .collect();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        counts
            .iter()
            .enumerate()
            .take_while(|&(i, &c)| c > i)
            .count()
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if !(rho > 0.0 && rho <= 0.5) {
        return Err(Error::param(format!("rho = {rho} must lie in (0, 1/2]")));
    }
    Ok(())
}

fn check_trials(trials: u64) -> Result<()> {
    if trials == 0 {
        return Err(Error::param("at least one trial is required"));
    }
    Ok(())
}

/// Calls `visit(i)` for each selected index in `0..d`, skipping ahead by
/// geometric gaps.
fn for_each_selected(rng: &mut ChaCha8Rng, d: usize, log_keep: f64, mut visit: impl FnMut(usize)) {
    let mut i = 0usize;
    loop {
        let u = 1.0 - rng.random::<f64>();
        let gap = (u.ln() / log_keep).floor();
        if gap >= (d - i) as f64 {
            return;
        }
        i += gap as usize;
        visit(i);
        i += 1;
        if i >= d {
            return;
        }
    }
}

fn draw_weight(rng: &mut ChaCha8Rng, f: &PrimeField, law: WeightLaw) -> u64 {
    match law {
        WeightLaw::One => f.one(),
        WeightLaw::Sign => {
            if rng.random::<bool>() {
                f.one()
            } else {
                f.neg(&f.one())
            }
        }
        WeightLaw::Uniform => f.from_canonical(rng.random_range(1..f.modulus())),
    }
}

/// Counts hits over `trials` trials split into seeded batches.
fn run_batches(trials: u64, seed: u64, trial: impl Fn(&mut ChaCha8Rng) -> bool + Sync) -> u64 {
    let batches = trials.div_ceil(TRIAL_BATCH);
    (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng_from_seed(derive_seed(seed, b));
            let count = TRIAL_BATCH.min(trials - b * TRIAL_BATCH);
            (0..count).filter(|_| trial(&mut rng)).count() as u64
        })
        .sum()
}

/// Estimate of `P(sum v_i x_i = 0)` with unit weights.
pub fn estimate_linear_lo(v: &[i64], rho: f64, trials: u64, seed: u64) -> Result<LOEstimate> {
    estimate_linear_lo_with(v, rho, trials, seed, WeightLaw::One)
}

pub fn estimate_linear_lo_with(
    v: &[i64],
    rho: f64,
    trials: u64,
    seed: u64,
    law: WeightLaw,
) -> Result<LOEstimate> {
    check_rho(rho)?;
    check_trials(trials)?;
    if v.is_empty() {
        return Err(Error::EmptyInput("coefficient sequence"));
    }
    if let Some(i) = v.iter().position(|&x| x == 0) {
        return Err(Error::param(format!("coefficient {i} is zero")));
    }
    let f = PrimeField::default();
    let coeffs: Vec<u64> = v.iter().map(|&x| f.from_i64(x)).collect();
    let d = coeffs.len();
    let log_keep = (1.0 - rho).ln();
    let hits = run_batches(trials, seed, |rng| {
        let mut sum = f.zero();
        let mut picked = Vec::new();
        for_each_selected(rng, d, log_keep, |i| picked.push(i));
        for i in picked {
            let w = draw_weight(rng, &f, law);
            sum = f.add(&sum, &f.mul(&coeffs[i], &w));
        }
        f.is_zero(&sum)
    });
    Ok(LOEstimate::new(
        hits,
        trials,
        (d as f64 * rho).powf(-0.5),
        d,
    ))
}

/// Estimate of `P(sum_ij a_ij z_i z_j = 0)` with unit weights.
pub fn estimate_quadratic_lo(
    grid: &CoefficientGrid,
    rho: f64,
    trials: u64,
    seed: u64,
) -> Result<LOEstimate> {
    estimate_quadratic_lo_with(grid, rho, trials, seed, WeightLaw::One)
}

pub fn estimate_quadratic_lo_with(
    grid: &CoefficientGrid,
    rho: f64,
    trials: u64,
    seed: u64,
    law: WeightLaw,
) -> Result<LOEstimate> {
    check_rho(rho)?;
    check_trials(trials)?;
    let q = grid.q_parameter();
    if q == 0 {
        return Err(Error::param("all-zero coefficient grid"));
    }
    let f = grid.field;
    let n = grid.n;
    let a: Vec<u64> = grid.entries.iter().map(|&x| f.from_canonical(x)).collect();
    let log_keep = (1.0 - rho).ln();
    let hits = run_batches(trials, seed, |rng| {
        let mut picked = Vec::new();
        for_each_selected(rng, n, log_keep, |i| picked.push(i));
        let z: Vec<(usize, u64)> = picked
            .into_iter()
            .map(|i| (i, draw_weight(rng, &f, law)))
            .collect();
        let mut form = f.zero();
        for &(i, zi) in &z {
            let mut row = f.zero();
            for &(j, zj) in &z {
                row = f.add(&row, &f.mul(&a[i * n + j], &zj));
            }
            form = f.add(&form, &f.mul(&zi, &row));
        }
        f.is_zero(&form)
    });
    Ok(LOEstimate::new(
        hits,
        trials,
        (q as f64 * rho).powf(-0.25),
        q,
    ))
}

/// The cofactor matrix `C_ij = (-1)^{i+j} det(Q without row i and column j)`
/// of `q`, over its prime field (rationals are reduced mod the default prime).
pub fn cofactor_grid(q: &SparseSymMatrix) -> Result<CoefficientGrid> {
    let n = q.n();
    if n > COFACTOR_CAP {
        return Err(Error::Capacity {
            what: "matrix dimension for cofactors",
            limit: COFACTOR_CAP,
            got: n,
        });
    }
    let f = match q.domain() {
        Domain::Prime(f) => *f,
        Domain::Rational => PrimeField::default(),
    };
    let mut dense = vec![vec![f.zero(); n]; n];
    for (i, j, c) in q.full_triplets() {
        dense[i][j] = match c {
            Coefficient::Prime(v) => f.from_canonical(*v),
            Coefficient::Rational(r) => f
                .from_rational(r)
                .ok_or_else(|| Error::param("denominator vanishes modulo the default prime"))?,
        };
    }
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<u64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != j).map(|c| dense[r][c]).collect())
                .collect();
            let d = determinant(&f, minor);
            let signed = if (i + j) % 2 == 1 { f.neg(&d) } else { d };
            entries.push(f.to_canonical(signed));
        }
    }
    CoefficientGrid::new(f, n, entries)
}

/// Determinant by Gaussian elimination. Empty matrices have determinant 1.
fn determinant<F: Field>(f: &F, mut a: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = a.len();
    let mut det = f.one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !f.is_zero(&a[r][c])) else {
            return f.zero();
        };
        if p != c {
            a.swap(p, c);
            det = f.neg(&det);
        }
        det = f.mul(&det, &a[c][c]);
        let inv = f.inv(&a[c][c]);
        let (top, rest) = a.split_at_mut(c + 1);
        let pivot = &top[c];
        for row in rest {
            if !f.is_zero(&row[c]) {
                let factor = f.mul(&row[c], &inv);
                f.row_mul_sub(&mut row[c..], &factor, &pivot[c..]);
            }
        }
    }
    det
}

/// Exact determinant of an integer matrix over the rationals, for tests.
#[cfg(test)]
fn rational_determinant(a: &[Vec<i64>]) -> num_rational::BigRational {
    let m = a
        .iter()
        .map(|r| {
            r.iter()
                .map(|&x| num_bigint::BigInt::from(x).into())
                .collect()
        })
        .collect();
    determinant(&crate::field::Rationals, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_variable() {
        let e = estimate_linear_lo(&[5], 0.3, 20_000, 7).unwrap();
        assert!((e.hit_probability - 0.7).abs() < 4.0 * e.std_error + 1e-9);
        assert_eq!(e.size_parameter, 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(estimate_linear_lo(&[1, 0], 0.3, 10, 1).is_err());
        assert!(estimate_linear_lo(&[1], 0.6, 10, 1).is_err());
        assert!(estimate_linear_lo(&[1], 0.3, 0, 1).is_err());
        let zero = CoefficientGrid::from_i64(2, &[0, 0, 0, 0]).unwrap();
        assert!(estimate_quadratic_lo(&zero, 0.2, 10, 1).is_err());
    }

    #[test]
    fn seeded_and_batch_stable() {
        let v: Vec<i64> = (1..=30).collect();
        let a = estimate_linear_lo_with(&v, 0.2, 10_000, 3, WeightLaw::Sign).unwrap();
        let b = estimate_linear_lo_with(&v, 0.2, 10_000, 3, WeightLaw::Sign).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn single_quadratic_term() {
        let g = CoefficientGrid::from_i64(3, &[4, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(g.q_parameter(), 1);
        let e = estimate_quadratic_lo(&g, 0.25, 20_000, 9).unwrap();
        assert!((e.hit_probability - 0.75).abs() < 4.0 * e.std_error);
    }

    #[test]
    fn q_parameter_is_an_h_index() {
        let full = CoefficientGrid::from_i64(3, &[1; 9]).unwrap();
        assert_eq!(full.q_parameter(), 3);
        let lower = CoefficientGrid::from_i64(3, &[1, 0, 0, 1, 1, 0, 1, 1, 1]).unwrap();
        assert_eq!(lower.q_parameter(), 2);
    }

    #[test]
    fn determinants_and_cofactors() {
        let m = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert_eq!(rational_determinant(&m), num_bigint::BigInt::from(4).into());
        let f = PrimeField::default();
        let mf: Vec<Vec<u64>> = m
            .iter()
            .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
            .collect();
        assert_eq!(f.to_canonical(determinant(&f, mf)), 4);
        // adj of the path Laplacian-like matrix above
        let q = SparseSymMatrix::from_triplets(
            3,
            Domain::default(),
            [(0, 0, 2i64), (1, 1, 2), (2, 2, 2), (0, 1, -1), (1, 2, -1)]
                .map(|(i, j, x)| (i, j, Coefficient::Prime(f.to_canonical(f.from_i64(x))))),
        )
        .unwrap();
        let c = cofactor_grid(&q).unwrap();
        let expect = [3, 2, 1, 2, 4, 2, 1, 2, 3];
        for (k, &x) in expect.iter().enumerate() {
            assert_eq!(c.get(k / 3, k % 3), x);
        }
    }
}
