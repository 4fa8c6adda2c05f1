//! Weight matrices, Bernoulli sparsification and exact rank.

mod bareiss;
mod elimination;
pub mod io;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, PrimeField, Rationals};
use crate::rng::{hash3, rng_from_seed};

pub use bareiss::{rank_rational_oracle, rank_rational_oracle_with_cap, DEFAULT_ORACLE_CAP};
pub use elimination::DENSE_SWITCH_DENSITY;

/// Coefficient domain of a matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Prime(PrimeField),
    Rational,
}

impl Default for Domain {
    fn default() -> Self {
        Domain::Prime(PrimeField::default())
    }
}

impl Domain {
    pub fn prime(q: u64) -> Result<Self> {
        Ok(Domain::Prime(PrimeField::new(q)?))
    }

    /// Modulus, or 0 for the rationals.
    pub fn modulus(&self) -> u64 {
        match self {
            Domain::Prime(f) => f.modulus(),
            Domain::Rational => 0,
        }
    }

    pub fn mode_name(&self) -> &'static str {
        match self {
            Domain::Prime(_) => "prime",
            Domain::Rational => "rational",
        }
    }

    fn admits(&self, c: &Coefficient) -> bool {
        match (self, c) {
            (Domain::Prime(f), Coefficient::Prime(v)) => *v < f.modulus(),
            (Domain::Rational, Coefficient::Rational(_)) => true,
            _ => false,
        }
    }
}

/// One matrix entry. Prime-field values are canonical residues in `[0, q)`;
/// rationals are kept in lowest terms by `BigRational`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Prime(u64),
    Rational(BigRational),
}

impl Coefficient {
    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Prime(v) => *v == 0,
            Coefficient::Rational(r) => r.is_zero(),
        }
    }

    pub fn zero_in(domain: &Domain) -> Self {
        match domain {
            Domain::Prime(_) => Coefficient::Prime(0),
            Domain::Rational => Coefficient::Rational(BigRational::zero()),
        }
    }

    pub fn parse_in(domain: &Domain, s: &str) -> std::result::Result<Self, String> {
        match domain {
            Domain::Prime(f) => {
                let v: u64 = s.parse().map_err(|_| format!("bad field value {s:?}"))?;
                if v >= f.modulus() {
                    return Err(format!("value {v} not reduced modulo {}", f.modulus()));
                }
                Ok(Coefficient::Prime(v))
            }
            Domain::Rational => BigRational::from_str(s)
                .map(Coefficient::Rational)
                .map_err(|_| format!("bad rational value {s:?}")),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Prime(v) => write!(f, "{v}"),
            Coefficient::Rational(r) => write!(f, "{r}"),
        }
    }
}

/// How the diagonal of a weight matrix is populated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DiagonalMode {
    #[default]
    #[serde(alias = "zero")]
    AllZero,
    #[serde(alias = "nonzero")]
    AllNonzero,
    Mixed,
}

impl DiagonalMode {
    pub fn name(&self) -> &'static str {
        match self {
            DiagonalMode::AllZero => "zero",
            DiagonalMode::AllNonzero => "nonzero",
            DiagonalMode::Mixed => "mixed",
        }
    }
}

impl FromStr for DiagonalMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" | "all-zero" => Ok(DiagonalMode::AllZero),
            "nonzero" | "all-nonzero" => Ok(DiagonalMode::AllNonzero),
            "mixed" => Ok(DiagonalMode::Mixed),
            _ => Err(Error::param(format!(
                "unknown diagonal mode {s:?} (expected zero, nonzero or mixed)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum WeightSource {
    /// Packed upper triangle, row-major.
    Explicit(Vec<Coefficient>),
    /// Entries are hashed from the seed on demand, so a weight matrix for
    /// large `n` costs no memory.
    Generated { seed: u64 },
}

/// The fixed symmetric weight pattern `W`: off-diagonal entries are nonzero,
/// the diagonal is unrestricted.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    n: usize,
    domain: Domain,
    diagonal_mode: DiagonalMode,
    source: WeightSource,
}

#[inline]
fn packed_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j);
    i * n - i * i.saturating_sub(1) / 2 + j - i
}

impl WeightMatrix {
    /// Builds `W` from a full square array, checking symmetry and that every
    /// off-diagonal entry is nonzero.
    pub fn from_rows(domain: Domain, rows: &[Vec<Coefficient>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyInput("weight matrix has no rows"));
        }
        let mut packed = Vec::with_capacity(n * (n + 1) / 2);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::param(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, c) in row.iter().enumerate().skip(i) {
                if !domain.admits(c) {
                    return Err(Error::param(format!(
                        "entry ({i}, {j}) is outside the domain"
                    )));
                }
                if rows[j][i] != *c {
                    return Err(Error::Symmetry { i, j });
                }
                if i != j && c.is_zero() {
                    return Err(Error::param(format!(
                        "off-diagonal weight ({i}, {j}) is zero; weights must be nonzero off the diagonal"
                    )));
                }
                packed.push(c.clone());
            }
        }
        let zeros = (0..n).filter(|&i| rows[i][i].is_zero()).count();
        let diagonal_mode = match zeros {
            z if z == n => DiagonalMode::AllZero,
            0 => DiagonalMode::AllNonzero,
            _ => DiagonalMode::Mixed,
        };
        Ok(WeightMatrix {
            n,
            domain,
            diagonal_mode,
            source: WeightSource::Explicit(packed),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn diagonal_mode(&self) -> DiagonalMode {
        self.diagonal_mode
    }

    /// Entry `w_ij`.
    pub fn get(&self, i: usize, j: usize) -> Coefficient {
        assert!(i < self.n && j < self.n, "index out of range");
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match &self.source {
            WeightSource::Explicit(packed) => packed[packed_index(self.n, i, j)].clone(),
            WeightSource::Generated { seed } => {
                if i == j {
                    let keep = match self.diagonal_mode {
                        DiagonalMode::AllZero => false,
                        DiagonalMode::AllNonzero => true,
                        DiagonalMode::Mixed => hash3(*seed ^ 0xD1A6, i as u64, i as u64) & 1 == 1,
                    };
                    if !keep {
                        return Coefficient::zero_in(&self.domain);
                    }
                }
                generated_value(&self.domain, *seed, i, j)
            }
        }
    }

    /// Copy of `W` with the diagonal replaced by zeros.
    pub fn with_zero_diagonal(&self) -> Self {
        let mut w = self.clone();
        w.diagonal_mode = DiagonalMode::AllZero;
        if let WeightSource::Explicit(packed) = &mut w.source {
            for i in 0..self.n {
                packed[packed_index(self.n, i, i)] = Coefficient::zero_in(&self.domain);
            }
        }
        w
    }

    /// All nonzero entries of `W` as a sparse symmetric matrix.
    pub fn to_sparse(&self) -> SparseSymMatrix {
        let mut entries = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                let c = self.get(i, j);
                if !c.is_zero() {
                    entries.push((i, j, c));
                }
            }
        }
        SparseSymMatrix {
            n: self.n,
            domain: self.domain,
            entries,
        }
    }
}

/// Uniform nonzero field element (or a small nonzero rational) determined by
/// `(seed, i, j)`.
fn generated_value(domain: &Domain, seed: u64, i: usize, j: usize) -> Coefficient {
    let mut h = hash3(seed, i as u64, j as u64);
    match domain {
        Domain::Prime(f) => {
            let q = f.modulus();
            let bits = 64 - (q - 1).leading_zeros();
            let mut ctr = 0u64;
            loop {
                let v = h >> (64 - bits);
                if v < q - 1 {
                    return Coefficient::Prime(v + 1);
                }
                ctr += 1;
                h = hash3(seed ^ ctr, i as u64, j as u64);
            }
        }
        Domain::Rational => {
            let num = ((h & 0xFFFF) as i64 + 1) * if h >> 63 == 1 { -1 } else { 1 };
            let den = ((h >> 16) & 0xF) as i64 + 1;
            Coefficient::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
        }
    }
}

/// Random weight matrix over GF(q) for the default q.
pub fn random_weights(n: usize, diagonal_mode: DiagonalMode, seed: u64) -> Result<WeightMatrix> {
    random_weights_in(Domain::default(), n, diagonal_mode, seed)
}

/// Random weight matrix: off-diagonal entries uniform nonzero, diagonal per
/// `diagonal_mode` (in mixed mode each diagonal entry is zero with
/// probability 1/2).
pub fn random_weights_in(
    domain: Domain,
    n: usize,
    diagonal_mode: DiagonalMode,
    seed: u64,
) -> Result<WeightMatrix> {
    if n == 0 {
        return Err(Error::EmptyInput("n must be at least 1"));
    }
    Ok(WeightMatrix {
        n,
        domain,
        diagonal_mode,
        source: WeightSource::Generated { seed },
    })
}

fn check_probability(p: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::param(format!(
            "probability p = {p} must satisfy 0 < p < 1"
        )));
    }
    Ok(())
}

/// The indicator pattern `xi_ij`, `i <= j`: one independent Bernoulli(p)
/// draw per unordered pair and per diagonal cell.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliMask {
    n: usize,
    p: f64,
    seed: u64,
    /// Positions with `xi = 1`, `i <= j`, sorted.
    support: Vec<(usize, usize)>,
}

impl BernoulliMask {
    pub fn sample(n: usize, p: f64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInput("n must be at least 1"));
        }
        check_probability(p)?;
        let mut rng = rng_from_seed(seed);
        let mut support = Vec::with_capacity((p * (n * (n + 1)) as f64 / 2.0 * 1.1) as usize + 16);
        for i in 0..n {
            for j in i..n {
                if rng.random_bool(p) {
                    support.push((i, j));
                }
            }
        }
        Ok(BernoulliMask {
            n,
            p,
            seed,
            support,
        })
    }

    /// Mask with an explicit support (positions are normalized to `i <= j`).
    pub fn from_support(
        n: usize,
        p: f64,
        seed: u64,
        positions: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut support: Vec<(usize, usize)> = positions
            .into_iter()
            .map(|(i, j)| if i <= j { (i, j) } else { (j, i) })
            .collect();
        if let Some(&(i, j)) = support.iter().find(|&&(_, j)| j >= n) {
            return Err(Error::param(format!(
                "mask position ({i}, {j}) out of range for n = {n}"
            )));
        }
        support.sort_unstable();
        support.dedup();
        Ok(BernoulliMask {
            n,
            p,
            seed,
            support,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn support(&self) -> &[(usize, usize)] {
        &self.support
    }

    /// Number of upper-triangular ones.
    pub fn fill(&self) -> usize {
        self.support.len()
    }

    pub fn xi(&self, i: usize, j: usize) -> bool {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.support.binary_search(&key).is_ok()
    }

    /// `q_ij = w_ij * xi_ij`.
    pub fn apply(&self, w: &WeightMatrix) -> Result<SparseSymMatrix> {
        if w.n() != self.n {
            return Err(Error::param(format!(
                "mask has n = {} but weights have n = {}",
                self.n,
                w.n()
            )));
        }
        let entries = self
            .support
            .iter()
            .filter_map(|&(i, j)| {
                let c = w.get(i, j);
                (!c.is_zero()).then_some((i, j, c))
            })
            .collect();
        Ok(SparseSymMatrix {
            n: self.n,
            domain: *w.domain(),
            entries,
        })
    }
}

/// `Q = Q(W, p)` for a fresh mask drawn from `seed`.
pub fn sparsify(w: &WeightMatrix, p: f64, seed: u64) -> Result<SparseSymMatrix> {
    BernoulliMask::sample(w.n(), p, seed)?.apply(w)
}

/// Sparse symmetric matrix stored as its upper triangle.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseSymMatrix {
    n: usize,
    domain: Domain,
    /// `(i, j, value)` with `i <= j`, sorted, all values nonzero.
    entries: Vec<(usize, usize, Coefficient)>,
}

impl SparseSymMatrix {
    pub fn zero(n: usize, domain: Domain) -> Self {
        SparseSymMatrix {
            n,
            domain,
            entries: Vec::new(),
        }
    }

    /// Builds a matrix from coordinate triples given in either triangle.
    /// Zero values are dropped; a pair given in both triangles must agree.
    pub fn from_triplets(
        n: usize,
        domain: Domain,
        triplets: impl IntoIterator<Item = (usize, usize, Coefficient)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, Coefficient)> = Vec::new();
        for (i, j, c) in triplets {
            if i >= n || j >= n {
                return Err(Error::param(format!(
                    "entry ({i}, {j}) out of range for n = {n}"
                )));
            }
            if !domain.admits(&c) {
                return Err(Error::param(format!(
                    "entry ({i}, {j}) is outside the domain"
                )));
            }
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            entries.push((a, b, c));
        }
        entries.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        let mut out: Vec<(usize, usize, Coefficient)> = Vec::with_capacity(entries.len());
        for (i, j, c) in entries {
            if let Some(last) = out.last() {
                if last.0 == i && last.1 == j {
                    if last.2 != c {
                        return Err(Error::Symmetry { i, j });
                    }
                    continue;
                }
            }
            out.push((i, j, c));
        }
        out.retain(|e| !e.2.is_zero());
        Ok(SparseSymMatrix {
            n,
            domain,
            entries: out,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    /// Upper-triangular nonzeros.
    pub fn entries(&self) -> &[(usize, usize, Coefficient)] {
        &self.entries
    }

    pub fn nnz_upper(&self) -> usize {
        self.entries.len()
    }

    /// Entry `(i, j)` under the symmetric read view.
    pub fn get(&self, i: usize, j: usize) -> Coefficient {
        let (a, b) = if i <= j { (i, j) } else { (j, i) };
        match self.entries.binary_search_by(|e| (e.0, e.1).cmp(&(a, b))) {
            Ok(k) => self.entries[k].2.clone(),
            Err(_) => Coefficient::zero_in(&self.domain),
        }
    }

    /// Both triangles as `(row, col, value)`.
    pub fn full_triplets(&self) -> impl Iterator<Item = (usize, usize, &Coefficient)> + '_ {
        self.entries.iter().flat_map(|(i, j, c)| {
            let mirror = (i != j).then_some((*j, *i, c));
            std::iter::once((*i, *j, c)).chain(mirror)
        })
    }

    /// Upper-left `m x m` block.
    pub fn minor(&self, m: usize) -> Result<SparseSymMatrix> {
        if m == 0 || m > self.n {
            return Err(Error::param(format!(
                "minor size {m} must lie in 1..={}",
                self.n
            )));
        }
        Ok(SparseSymMatrix {
            n: m,
            domain: self.domain,
            entries: self.entries.iter().filter(|e| e.1 < m).cloned().collect(),
        })
    }

    /// Number of rows with no nonzero entry.
    pub fn zero_rows(&self) -> usize {
        let mut touched = vec![false; self.n];
        for (i, j, _) in &self.entries {
            touched[*i] = true;
            touched[*j] = true;
        }
        touched.iter().filter(|t| !**t).count()
    }

    pub fn to_general(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.n,
            cols: self.n,
            domain: self.domain,
            entries: self
                .full_triplets()
                .map(|(i, j, c)| (i, j, c.clone()))
                .collect(),
        }
    }
}

/// General (not necessarily symmetric) sparse matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    entries: Vec<(usize, usize, Coefficient)>,
}

impl SparseMatrix {
    pub fn new(
        rows: usize,
        cols: usize,
        domain: Domain,
        triplets: impl IntoIterator<Item = (usize, usize, Coefficient)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, Coefficient)> = Vec::new();
        for (i, j, c) in triplets {
            if i >= rows || j >= cols {
                return Err(Error::param(format!("entry ({i}, {j}) out of range")));
            }
            if !domain.admits(&c) {
                return Err(Error::param(format!(
                    "entry ({i}, {j}) is outside the domain"
                )));
            }
            if !c.is_zero() {
                entries.push((i, j, c));
            }
        }
        entries.sort_by(|x, y| (x.0, x.1).cmp(&(y.0, y.1)));
        if entries
            .windows(2)
            .any(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1))
        {
            return Err(Error::param("duplicate entry"));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            domain,
            entries,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> &Domain {
        &self.domain
    }

    pub fn entries(&self) -> &[(usize, usize, Coefficient)] {
        &self.entries
    }
}

/// Exact rank over the matrix's coefficient domain.
pub fn exact_rank(q: &SparseSymMatrix) -> usize {
    rank_of(q.n, q.n, &q.domain, q.full_triplets())
}

/// Exact rank of a general sparse matrix.
pub fn exact_rank_general(a: &SparseMatrix) -> usize {
    rank_of(
        a.rows,
        a.cols,
        &a.domain,
        a.entries.iter().map(|(i, j, c)| (*i, *j, c)),
    )
}

fn rank_of<'a>(
    rows: usize,
    cols: usize,
    domain: &Domain,
    triplets: impl Iterator<Item = (usize, usize, &'a Coefficient)>,
) -> usize {
    match domain {
        Domain::Prime(f) => {
            let t = triplets
                .map(|(i, j, c)| match c {
                    Coefficient::Prime(v) => (i as u32, j as u32, f.from_canonical(*v)),
                    Coefficient::Rational(_) => unreachable!("domain checked at construction"),
                })
                .collect();
            elimination::rank(f, rows, cols, t)
        }
        Domain::Rational => {
            let t = triplets
                .map(|(i, j, c)| match c {
                    Coefficient::Rational(r) => (i as u32, j as u32, r.clone()),
                    Coefficient::Prime(_) => unreachable!("domain checked at construction"),
                })
                .collect();
            elimination::rank(&Rationals, rows, cols, t)
        }
    }
}

/// Rank of a dense matrix given as rows, over any field.
pub fn dense_rank<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    elimination::dense_rank(field, rows, cols)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Coefficient {
        Coefficient::Prime(v)
    }

    pub(crate) fn path3(a: u64, b: u64) -> SparseSymMatrix {
        SparseSymMatrix::from_triplets(3, Domain::default(), [(0, 1, p(a)), (1, 2, p(b))]).unwrap()
    }

    #[test]
    fn packed_index_is_dense_and_ordered() {
        let n = 5;
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                assert_eq!(packed_index(n, i, j), k);
                k += 1;
            }
        }
    }

    #[test]
    fn random_weights_contract() {
        assert!(matches!(
            random_weights(0, DiagonalMode::AllZero, 1),
            Err(Error::EmptyInput(_))
        ));
        let w1 = random_weights(1, DiagonalMode::AllZero, 9).unwrap();
        assert!(w1.get(0, 0).is_zero());
        let w = random_weights(3, DiagonalMode::AllZero, 7).unwrap();
        for i in 0..3 {
            assert!(w.get(i, i).is_zero());
            for j in 0..3 {
                assert_eq!(w.get(i, j), w.get(j, i));
                if i != j {
                    assert!(!w.get(i, j).is_zero());
                }
            }
        }
        assert_eq!(w, random_weights(3, DiagonalMode::AllZero, 7).unwrap());
        let nz = random_weights(50, DiagonalMode::AllNonzero, 7).unwrap();
        assert!((0..50).all(|i| !nz.get(i, i).is_zero()));
        let mixed = random_weights(200, DiagonalMode::Mixed, 7).unwrap();
        let zeros = (0..200).filter(|&i| mixed.get(i, i).is_zero()).count();
        assert!(zeros > 60 && zeros < 140, "{zeros}");
    }

    #[test]
    fn explicit_weights_reject_zero_off_diagonal() {
        let d = Domain::default();
        let rows = vec![vec![p(0), p(0)], vec![p(0), p(0)]];
        assert!(matches!(
            WeightMatrix::from_rows(d, &rows),
            Err(Error::InvalidParameter(_))
        ));
        let asym = vec![vec![p(0), p(1)], vec![p(2), p(0)]];
        assert!(matches!(
            WeightMatrix::from_rows(d, &asym),
            Err(Error::Symmetry { .. })
        ));
        let ok = vec![vec![p(5), p(1)], vec![p(1), p(0)]];
        let w = WeightMatrix::from_rows(d, &ok).unwrap();
        assert_eq!(w.diagonal_mode(), DiagonalMode::Mixed);
        assert_eq!(w.get(1, 0), p(1));
        assert!(w.with_zero_diagonal().get(0, 0).is_zero());
    }

    #[test]
    fn sparsify_is_deterministic_and_rejects_bad_p() {
        let w = random_weights(30, DiagonalMode::AllNonzero, 1).unwrap();
        assert_eq!(sparsify(&w, 0.2, 5).unwrap(), sparsify(&w, 0.2, 5).unwrap());
        assert_ne!(sparsify(&w, 0.2, 5).unwrap(), sparsify(&w, 0.2, 6).unwrap());
        for bad in [0.0, 1.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(
                sparsify(&w, bad, 1),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn sparsify_fill_concentrates() {
        // Binomial(N, p) with N = n(n+1)/2: mean of 10 fills within 3 sd of the mean.
        let n = 2000usize;
        let p = 0.01;
        let cells = (n * (n + 1) / 2) as f64;
        let w = random_weights(n, DiagonalMode::AllNonzero, 3).unwrap();
        let mean: f64 = (0..10)
            .map(|s| BernoulliMask::sample(n, p, s).unwrap().fill() as f64)
            .sum::<f64>()
            / 10.0;
        let sd_of_mean = (cells * p * (1.0 - p) / 10.0).sqrt();
        assert!((mean - cells * p).abs() <= 3.0 * sd_of_mean, "mean {mean}");
        // applying the mask keeps exactly the masked nonzero weights
        let mask = BernoulliMask::sample(n, p, 0).unwrap();
        assert_eq!(mask.apply(&w).unwrap().nnz_upper(), mask.fill());
    }

    #[test]
    fn triplets_symmetry_checks() {
        let d = Domain::default();
        let q = SparseSymMatrix::from_triplets(3, d, [(1, 0, p(4)), (0, 1, p(4))]).unwrap();
        assert_eq!(q.get(0, 1), p(4));
        assert_eq!(q.get(1, 0), p(4));
        assert!(matches!(
            SparseSymMatrix::from_triplets(3, d, [(1, 0, p(4)), (0, 1, p(5))]),
            Err(Error::Symmetry { i: 0, j: 1 })
        ));
        assert!(SparseSymMatrix::from_triplets(3, d, [(3, 0, p(1))]).is_err());
    }

    #[test]
    fn exact_rank_examples() {
        let d = Domain::default();
        for n in 1..6 {
            assert_eq!(exact_rank(&SparseSymMatrix::zero(n, d)), 0);
        }
        assert_eq!(exact_rank(&path3(3, 11)), 2);
        let diag = SparseSymMatrix::from_triplets(6, d, [(0, 0, p(2)), (2, 2, p(3)), (5, 5, p(9))])
            .unwrap();
        assert_eq!(exact_rank(&diag), 3);
        let ones = SparseSymMatrix::from_triplets(
            4,
            d,
            (0..4).flat_map(|i| (i..4).map(move |j| (i, j, p(1)))),
        )
        .unwrap();
        assert_eq!(exact_rank(&ones), 1);
    }

    #[test]
    fn minor_examples() {
        let q = path3(3, 11);
        assert_eq!(q.minor(3).unwrap(), q);
        let m2 = q.minor(2).unwrap();
        assert_eq!(m2.entries(), &[(0, 1, p(3))]);
        assert_eq!(exact_rank(&m2), 2);
        assert!(q.minor(0).is_err());
        assert!(q.minor(4).is_err());
    }

    #[test]
    fn rational_domain_rank() {
        let r = |a: i64, b: i64| Coefficient::Rational(BigRational::new(a.into(), b.into()));
        let q = SparseSymMatrix::from_triplets(
            3,
            Domain::Rational,
            [
                (0, 0, r(1, 2)),
                (0, 1, r(1, 3)),
                (1, 1, r(2, 9)),
                (2, 2, r(-7, 1)),
            ],
        )
        .unwrap();
        // rows 0 and 1 are proportional: (1/2, 1/3) and (1/3, 2/9)
        assert_eq!(exact_rank(&q), 2);
        assert_eq!(rank_rational_oracle(&q).unwrap(), 2);
    }

    #[test]
    fn zero_rows_counted() {
        assert_eq!(path3(1, 1).zero_rows(), 0);
        let d = Domain::default();
        let q = SparseSymMatrix::from_triplets(4, d, [(0, 1, p(1))]).unwrap();
        assert_eq!(q.zero_rows(), 2);
    }
}
