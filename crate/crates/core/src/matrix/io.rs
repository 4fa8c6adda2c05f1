//! Coordinate text format for symmetric matrices.
//!
//! ```text
//! n q mode
//! i j value
//! ...
//! ```
//!
//! Indices are 0-based. `mode` is `prime` (values are canonical residues
//! modulo `q`) or `rational` (`q` is 0, values are `a` or `a/b`). The writer
//! emits the upper triangle in row-major order; the reader also accepts lower
//! triangle entries and rejects a pair whose two triangles disagree.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{Coefficient, Domain, SparseSymMatrix};
use crate::error::{Error, Result};

pub fn write_matrix(q: &SparseSymMatrix) -> String {
    let mut out = String::with_capacity(16 + q.nnz_upper() * 32);
    let _ = writeln!(
        out,
        "{} {} {}",
        q.n(),
        q.domain().modulus(),
        q.domain().mode_name()
    );
    for (i, j, c) in q.entries() {
        let _ = writeln!(out, "{i} {j} {c}");
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<SparseSymMatrix> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing header line \"n q mode\""))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(Error::parse(hline, "header must be \"n q mode\""));
    }
    let n: usize = fields[0]
        .parse()
        .map_err(|_| Error::parse(hline, format!("bad dimension {:?}", fields[0])))?;
    let q: u64 = fields[1]
        .parse()
        .map_err(|_| Error::parse(hline, format!("bad modulus {:?}", fields[1])))?;
    let domain = match fields[2] {
        "prime" => Domain::prime(q).map_err(|e| Error::parse(hline, e.to_string()))?,
        "rational" if q == 0 => Domain::Rational,
        "rational" => return Err(Error::parse(hline, "rational mode requires q = 0")),
        other => return Err(Error::parse(hline, format!("unknown mode {other:?}"))),
    };

    let mut seen: HashMap<(usize, usize), (Coefficient, bool)> = HashMap::new();
    for (line, text) in lines {
        let parts: Vec<&str> = text.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(Error::parse(line, "expected \"i j value\""));
        }
        let idx = |s: &str| -> Result<usize> {
            let v: usize = s
                .parse()
                .map_err(|_| Error::parse(line, format!("bad index {s:?}")))?;
            if v >= n {
                return Err(Error::parse(
                    line,
                    format!("index {v} out of range for n = {n}"),
                ));
            }
            Ok(v)
        };
        let (i, j) = (idx(parts[0])?, idx(parts[1])?);
        let c = Coefficient::parse_in(&domain, parts[2]).map_err(|m| Error::parse(line, m))?;
        if c.is_zero() {
            return Err(Error::parse(line, "stored coefficients must be nonzero"));
        }
        let key = (i.min(j), i.max(j));
        let upper = i <= j;
        match seen.get(&key) {
            None => {
                seen.insert(key, (c, upper));
            }
            Some((prev, prev_upper)) => {
                if *prev_upper == upper || i == j {
                    return Err(Error::parse(line, format!("duplicate entry ({i}, {j})")));
                }
                if *prev != c {
                    return Err(Error::parse(
                        line,
                        format!("symmetry violation: ({i}, {j}) = {c} but ({j}, {i}) = {prev}"),
                    ));
                }
            }
        }
    }
    SparseSymMatrix::from_triplets(
        n,
        domain,
        seen.into_iter().map(|((i, j), (c, _))| (i, j, c)),
    )
}

pub fn read_matrix_file(path: impl AsRef<Path>) -> Result<SparseSymMatrix> {
    parse_matrix(&fs::read_to_string(path)?)
}

pub fn write_matrix_file(path: impl AsRef<Path>, q: &SparseSymMatrix) -> Result<()> {
    fs::write(path, write_matrix(q))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{random_weights_in, sparsify, DiagonalMode};
    use proptest::prelude::*;

    #[test]
    fn path_pattern_text() {
        let text = "3 2305843009213693951 prime\n0 1 5\n1 2 7\n";
        let q = parse_matrix(text).unwrap();
        assert_eq!(q.n(), 3);
        assert_eq!(write_matrix(&q), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = "2 7 prime\n0 1 3\n1 0 4\n";
        match parse_matrix(bad) {
            Err(Error::Parse { line: 3, message }) => assert!(message.contains("symmetry")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_matrix("2 7 prime\n0 5 1\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("2 7 prime\n0 1 9\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix("2 8 prime\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_matrix("2 7 prime\n0 1 0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_matrix(""),
            Err(Error::Parse { line: 1, .. })
        ));
        // mirrored entries that agree are fine
        assert_eq!(
            parse_matrix("2 7 prime\n0 1 3\n1 0 3\n")
                .unwrap()
                .nnz_upper(),
            1
        );
    }

    #[test]
    fn rational_round_trip() {
        let text = "3 0 rational\n0 0 -1/2\n0 2 3\n2 2 7/9\n";
        assert_eq!(write_matrix(&parse_matrix(text).unwrap()), text);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn write_parse_is_bit_exact(n in 1usize..25, p in 0.05f64..0.9, seed in any::<u64>(), rational in any::<bool>()) {
            let domain = if rational { Domain::Rational } else { Domain::default() };
            let w = random_weights_in(domain, n, DiagonalMode::Mixed, seed).unwrap();
            let q = sparsify(&w, p, seed ^ 1).unwrap();
            let text = write_matrix(&q);
            let back = parse_matrix(&text).unwrap();
            prop_assert_eq!(&back, &q);
            prop_assert_eq!(write_matrix(&back), text);
        }
    }
}
