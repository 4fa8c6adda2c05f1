//! Edge-list text format: a line holding `n`, then one `i j` line per edge,
//! with `i i` for a loop. Indices are 0-based.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", g.n());
    for (i, j) in g.edges() {
        let _ = writeln!(out, "{i} {j}");
    }
    out
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, l)| (k + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, "missing vertex count"))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(hline, format!("bad vertex count {header:?}")))?;
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for (line, text) in lines {
        let parts: Vec<&str> = text.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(Error::parse(line, "expected \"i j\""));
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
        if !seen.insert((i.min(j), i.max(j))) {
            return Err(Error::parse(line, format!("duplicate edge ({i}, {j})")));
        }
        edges.push((i, j));
    }
    Graph::from_edges(n, edges)
}

pub fn read_graph_file(path: impl AsRef<Path>) -> Result<Graph> {
    parse_graph(&fs::read_to_string(path)?)
}

pub fn write_graph_file(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    fs::write(path, write_graph(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "4\n0 1\n1 1\n1 3\n";
        let g = parse_graph(text).unwrap();
        assert!(g.has_loop(1));
        assert_eq!(write_graph(&g), text);
        // lower-triangle input is accepted and normalised
        assert_eq!(
            write_graph(&parse_graph("4\n1 0\n1 1\n3 1\n").unwrap()),
            text
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_graph("x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_graph("2\n0 2\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(
            parse_graph("2\n0 1\n1 0\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_graph("2\n0\n"),
            Err(Error::Parse { line: 2, .. })
        ));
    }
}
