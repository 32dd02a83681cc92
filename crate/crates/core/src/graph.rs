//! Signed multigraphs and the line-oriented graph file format.
//!
//! Vertices and edges are stored with 0-based indices. The text format (and
//! every human-facing message) uses 1-based ids, so edge `e` here is edge
//! `e + 1` in a file. Edge indices are positions in the input and are never
//! renumbered by any operation of this crate.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }

    /// Product of a sequence of signs; the empty product is positive.
    pub fn product<I: IntoIterator<Item = Sign>>(signs: I) -> Sign {
        signs.into_iter().fold(Sign::Positive, |acc, s| acc * s)
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub sign: Sign,
}

impl Edge {
    /// The endpoint opposite to `x`.
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            debug_assert_eq!(x, self.v);
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// An undirected multigraph with a sign on every edge. Loops are rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedGraph {
    n: usize,
    edges: Vec<Edge>,
    incident: Vec<Vec<usize>>,
}

impl SignedGraph {
    pub fn new(n: usize) -> Self {
        SignedGraph {
            n,
            edges: Vec::new(),
            incident: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from `(u, v, sign)` triples with 0-based endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Sign)>,
    {
        let mut g = SignedGraph::new(n);
        for (u, v, sign) in edges {
            g.add_edge(u, v, sign)?;
        }
        Ok(g)
    }

    /// Appends an edge and returns its index.
    pub fn add_edge(&mut self, u: usize, v: usize, sign: Sign) -> Result<usize> {
        if u >= self.n {
            return Err(Error::UnknownVertex(u));
        }
        if v >= self.n {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Err(Error::LoopEdge { line: 0, vertex: u + 1 });
        }
        let id = self.edges.len();
        self.edges.push(Edge { u, v, sign });
        self.incident[u].push(id);
        self.incident[v].push(id);
        Ok(id)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn sign(&self, e: usize) -> Sign {
        self.edges[e].sign
    }

    /// Edge indices incident with `v`, in increasing order.
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_cubic(&self) -> bool {
        self.incident.iter().all(|inc| inc.len() == 3)
    }

    pub fn negative_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].sign.is_negative())
            .collect()
    }

    pub fn positive_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].sign.is_positive())
            .collect()
    }

    pub fn negative_count(&self) -> usize {
        self.edges.iter().filter(|e| e.sign.is_negative()).count()
    }

    /// Same underlying graph with the signature replaced.
    pub fn with_signature(&self, signs: &[Sign]) -> SignedGraph {
        assert_eq!(signs.len(), self.edges.len());
        let mut g = self.clone();
        for (edge, &s) in g.edges.iter_mut().zip(signs) {
            edge.sign = s;
        }
        g
    }

    /// Same underlying graph with every edge positive.
    pub fn unsigned(&self) -> SignedGraph {
        self.with_signature(&vec![Sign::Positive; self.edges.len()])
    }

    pub fn signature(&self) -> Vec<Sign> {
        self.edges.iter().map(|e| e.sign).collect()
    }

    pub fn edge_mask<I: IntoIterator<Item = usize>>(&self, edges: I) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.edges.len());
        for e in edges {
            mask.insert(e);
        }
        mask
    }

    pub fn all_edges_mask(&self) -> FixedBitSet {
        let mut mask = FixedBitSet::with_capacity(self.edges.len());
        mask.insert_range(..);
        mask
    }

    /// Distinct vertices touched by the given edges, sorted.
    pub fn vertices_of(&self, edges: &[usize]) -> Vec<usize> {
        let mut vs: Vec<usize> = edges.iter().flat_map(|&e| [self.edges[e].u, self.edges[e].v]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Serializes in the `p sg` text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("p sg {} {}\n", self.n, self.edges.len());
        for e in &self.edges {
            out.push_str(&format!("e {} {} {}\n", e.u + 1, e.v + 1, e.sign));
        }
        out
    }
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for SignedGraph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_signed_graph(s)
    }
}

/// Parses the `p sg <n> <m>` / `e <u> <v> <+|->` format. Lines starting with
/// `#` and blank lines are ignored.
pub fn parse_signed_graph(text: &str) -> Result<SignedGraph> {
    let mut graph: Option<SignedGraph> = None;
    let mut declared = 0usize;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if graph.is_some() {
                    return Err(syntax(line, "duplicate problem line"));
                }
                if tokens.len() != 4 || tokens[1] != "sg" {
                    return Err(syntax(line, "expected `p sg <n> <m>`"));
                }
                let n = parse_count(tokens[2], line)?;
                declared = parse_count(tokens[3], line)?;
                graph = Some(SignedGraph::new(n));
            }
            "e" => {
                let g = graph
                    .as_mut()
                    .ok_or_else(|| syntax(line, "edge line before `p sg` header"))?;
                if tokens.len() != 4 {
                    return Err(syntax(line, "expected `e <u> <v> <+|->`"));
                }
                let n = g.vertex_count();
                let u = parse_vertex(tokens[1], n, line)?;
                let v = parse_vertex(tokens[2], n, line)?;
                if u == v {
                    return Err(Error::LoopEdge { line, vertex: u + 1 });
                }
                let sign = match tokens[3] {
                    "+" | "+1" => Sign::Positive,
                    "-" | "-1" | "\u{2212}" => Sign::Negative,
                    other => return Err(syntax(line, &format!("bad sign `{other}`"))),
                };
                g.add_edge(u, v, sign)?;
            }
            other => return Err(syntax(line, &format!("unknown line type `{other}`"))),
        }
    }

    let g = graph.ok_or_else(|| syntax(0, "missing `p sg` header"))?;
    if g.edge_count() != declared {
        return Err(Error::EdgeCountMismatch {
            declared,
            found: g.edge_count(),
        });
    }
    Ok(g)
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::Syntax {
        line,
        msg: msg.to_string(),
    }
}

fn parse_count(tok: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| syntax(line, &format!("expected a non-negative integer, got `{tok}`")))
}

fn parse_vertex(tok: &str, n: usize, line: usize) -> Result<usize> {
    let vertex: i64 = tok
        .parse()
        .map_err(|_| syntax(line, &format!("expected a vertex id, got `{tok}`")))?;
    if vertex < 1 || vertex as usize > n {
        return Err(Error::VertexOutOfRange {
            line,
            vertex: vertex.max(0) as usize,
            n,
        });
    }
    Ok(vertex as usize - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_triangle_with_one_negative_edge() {
        let g: SignedGraph = "p sg 3 3\ne 1 2 -\ne 2 3 +\ne 1 3 +\n".parse().unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.negative_edges(), vec![0]);
        assert_eq!(
            *g.edge(2),
            Edge {
                u: 0,
                v: 2,
                sign: Sign::Positive
            }
        );
    }

    #[test]
    fn accepts_parallel_edges() {
        let g = parse_signed_graph("# digon\np sg 2 2\ne 1 2 +\n\ne 1 2 -\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.incident(0), &[0, 1]);
        assert_eq!(g.sign(1), Sign::Negative);
    }

    #[test]
    fn accepts_unicode_minus() {
        let g = parse_signed_graph("p sg 2 1\ne 1 2 \u{2212}\n").unwrap();
        assert_eq!(g.negative_count(), 1);
    }

    #[test]
    fn rejects_loops() {
        let err = parse_signed_graph("p sg 2 2\ne 1 2 +\ne 1 1 +\n").unwrap_err();
        assert_eq!(err, Error::LoopEdge { line: 3, vertex: 1 });
    }

    #[test]
    fn rejects_out_of_range_vertex() {
        let err = parse_signed_graph("p sg 2 1\ne 1 3 +\n").unwrap_err();
        assert_eq!(
            err,
            Error::VertexOutOfRange {
                line: 2,
                vertex: 3,
                n: 2
            }
        );
        assert!(matches!(
            parse_signed_graph("p sg 2 1\ne 0 1 +\n"),
            Err(Error::VertexOutOfRange { vertex: 0, .. })
        ));
    }

    #[test]
    fn rejects_count_mismatch() {
        let err = parse_signed_graph("p sg 3 3\ne 1 2 +\n").unwrap_err();
        assert_eq!(err, Error::EdgeCountMismatch { declared: 3, found: 1 });
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        let err = parse_signed_graph("p sg 3 1\n\ne 1 2 ?\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 3, .. }));
        let err = parse_signed_graph("e 1 2 +\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
        let err = parse_signed_graph("p sg x 1\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }));
    }

    #[test]
    fn text_round_trip() {
        let text = "p sg 4 3\ne 1 2 +\ne 2 3 -\ne 3 4 +\n";
        let g = parse_signed_graph(text).unwrap();
        assert_eq!(g.to_text(), text);
    }

    #[test]
    fn sign_algebra() {
        assert_eq!(Sign::Negative * Sign::Negative, Sign::Positive);
        assert_eq!(Sign::product([Sign::Negative, Sign::Positive]), Sign::Negative);
        assert_eq!(Sign::product([]), Sign::Positive);
    }
}
