use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// An unordered vertex pair, stored 0-based with `lo < hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        Edge {
            lo: a.min(b),
            hi: a.max(b),
        }
    }
}

/// A simple graph on `k` labeled vertices with `n ≥ 1` labeled edges.
///
/// Edge labels are positions in [`LabeledGraph::edges`]. Vertices are
/// 0-based here; the text format is 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    k: usize,
    edges: Vec<Edge>,
}

/// Number of vertex pairs, `k(k−1)/2`.
pub fn pair_count(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

impl LabeledGraph {
    /// Builds a graph from 0-based vertex pairs.
    pub fn new(k: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if k < 2 {
            return Err(Error::Validation(format!("vertex count {k} must be at least 2")));
        }
        let mut seen = HashSet::new();
        let mut edges = Vec::new();
        for (idx, (a, b)) in pairs.into_iter().enumerate() {
            if a == b {
                return Err(Error::Validation(format!("edge {idx} is a self-loop on vertex {}", a + 1)));
            }
            if a >= k || b >= k {
                return Err(Error::Validation(format!(
                    "edge {idx} ({}, {}) references a vertex outside 1..={k}",
                    a + 1,
                    b + 1
                )));
            }
            let e = Edge::new(a, b);
            if !seen.insert(e) {
                return Err(Error::Validation(format!(
                    "edge {idx} duplicates the pair ({}, {})",
                    e.lo + 1,
                    e.hi + 1
                )));
            }
            edges.push(e);
        }
        if edges.is_empty() {
            return Err(Error::Validation("a graph needs at least one edge".into()));
        }
        Ok(LabeledGraph { k, edges })
    }

    /// Skips validation; callers guarantee distinct in-range pairs.
    pub(crate) fn from_edges_unchecked(k: usize, edges: Vec<Edge>) -> Self {
        debug_assert!(k >= 2 && !edges.is_empty());
        LabeledGraph { k, edges }
    }

    /// Builds a graph from 1-based vertex pairs, as written in graph files.
    pub fn from_one_based(k: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if let Some(&(a, b)) = pairs.iter().find(|&&(a, b)| a == 0 || b == 0) {
            return Err(Error::Validation(format!("vertex labels start at 1, got ({a}, {b})")));
        }
        LabeledGraph::new(k, pairs.iter().map(|&(a, b)| (a - 1, b - 1)))
    }

    pub fn vertex_count(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_connected(&self) -> bool {
        is_connected(self)
    }

    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut dsu = DisjointSets::new(self.k);
        for e in &self.edges {
            dsu.union(e.lo, e.hi);
        }
        dsu.components()
    }

    /// Parses the graph text format: a `k n` header followed by `n` lines
    /// `i j` with `1 ≤ i < j ≤ k`. Text after `#` is ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut pairs = Vec::new();
        let mut seen: HashSet<(usize, usize)> = HashSet::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two integers, found {:?}", line),
                });
            }
            let parse = |s: &str| {
                s.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("not a nonnegative integer: {s:?}"),
                })
            };
            let (a, b) = (parse(fields[0])?, parse(fields[1])?);
            let Some((k, n)) = header else {
                if a < 2 {
                    return Err(Error::Validation(format!("line {line_no}: vertex count {a} must be at least 2")));
                }
                if b == 0 || b > pair_count(a) {
                    return Err(Error::Validation(format!(
                        "line {line_no}: edge count {b} must lie in 1..={}",
                        pair_count(a)
                    )));
                }
                header = Some((a, b));
                continue;
            };
            let invalid = |message: String| Error::Validation(format!("line {line_no}: {message}"));
            if a == b {
                return Err(invalid(format!("self-loop {a} {b}")));
            }
            if a == 0 || b > k {
                return Err(invalid(format!("vertex out of range 1..={k} in edge {a} {b}")));
            }
            if a > b {
                return Err(invalid(format!("edge {a} {b} must be written with i < j")));
            }
            if !seen.insert((a, b)) {
                return Err(invalid(format!("duplicate edge {a} {b}")));
            }
            if pairs.len() == n {
                return Err(invalid(format!("more than the {n} declared edges")));
            }
            pairs.push((a, b));
        }
        let Some((k, n)) = header else {
            return Err(Error::Parse {
                line: last_line.max(1),
                message: "missing \"k n\" header".into(),
            });
        };
        if pairs.len() != n {
            return Err(Error::Validation(format!(
                "header declares {n} edges but {} were listed",
                pairs.len()
            )));
        }
        LabeledGraph::from_one_based(k, &pairs)
    }
}

impl FromStr for LabeledGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LabeledGraph::parse(s)
    }
}

/// Writes the graph text format.
impl fmt::Display for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.k, self.edges.len())?;
        for e in &self.edges {
            writeln!(f, "{} {}", e.lo + 1, e.hi + 1)?;
        }
        Ok(())
    }
}

/// True iff one component spans all `k` vertices. Uses union-find and is
/// independent of the F2 rank computation.
pub fn is_connected(g: &LabeledGraph) -> bool {
    let mut dsu = DisjointSets::new(g.k);
    for e in &g.edges {
        if dsu.union(e.lo, e.hi) && dsu.components() == 1 {
            return true;
        }
    }
    dsu.components() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_connectivity() {
        let k3 = LabeledGraph::from_one_based(3, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        let two = LabeledGraph::from_one_based(4, &[(1, 2), (3, 4)]).unwrap();
        let path = LabeledGraph::from_one_based(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(is_connected(&k3));
        assert!(!is_connected(&two));
        assert!(is_connected(&path));
        assert_eq!(two.component_count(), 2);
        let isolated = LabeledGraph::from_one_based(4, &[(1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(!isolated.is_connected());
    }

    #[test]
    fn constructor_rejects_bad_graphs() {
        assert!(LabeledGraph::new(1, [(0, 0)]).is_err());
        assert!(LabeledGraph::new(3, [(0, 0)]).is_err());
        assert!(LabeledGraph::new(3, [(0, 1), (1, 0)]).is_err());
        assert!(LabeledGraph::new(3, [(0, 3)]).is_err());
        assert!(LabeledGraph::new(3, std::iter::empty()).is_err());
    }

    #[test]
    fn parse_text_format() {
        let g = LabeledGraph::parse("# triangle\n3 3\n1 2\n1 3 # second\n\n2 3\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[Edge::new(0, 1), Edge::new(0, 2), Edge::new(1, 2)]);
        assert_eq!(LabeledGraph::parse(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn parse_errors_name_lines() {
        let err = LabeledGraph::parse("3 2\n1 2\n2 2\n").unwrap_err();
        assert!(matches!(&err, Error::Validation(m) if m.contains("line 3") && m.contains("self-loop")));
        let err = LabeledGraph::parse("3 3\n1 2\n2 3\n1 2\n").unwrap_err();
        assert!(matches!(&err, Error::Validation(m) if m.contains("line 4") && m.contains("duplicate")));
        let err = LabeledGraph::parse("3 2\n1 x\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, message: "not a nonnegative integer: \"x\"".into() });
        assert!(LabeledGraph::parse("3 2\n1 2\n").is_err());
        assert!(LabeledGraph::parse("3 1\n2 1\n").is_err());
        assert!(LabeledGraph::parse("3 1\n1 4\n").is_err());
        assert!(LabeledGraph::parse("3 4\n").is_err());
        assert!(matches!(LabeledGraph::parse("# nothing\n"), Err(Error::Parse { .. })));
        assert!(matches!(LabeledGraph::parse("1 2 3\n"), Err(Error::Parse { line: 1, .. })));
    }
}
