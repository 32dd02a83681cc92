//! Cover text format: one circuit per line, 1-based edge ids.
//!
//! ```text
//! C 1 2 3 4
//! B 1 2 3 | 7 | 4 5 6
//! ```
//! A `C` line is a positive cycle; a `B` line lists the first cycle, the
//! connecting path in order (possibly empty) and the second cycle.

use crate::cycles::{classify_cycle, Barbell, Circuit, CircuitFamily};
use crate::error::{Error, Result};
use crate::graph::SignedGraph;

/// A circuit as written in a cover file, not yet checked against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitRecord {
    Cycle(Vec<usize>),
    Barbell {
        cycle_a: Vec<usize>,
        path: Vec<usize>,
        cycle_b: Vec<usize>,
    },
}

impl CircuitRecord {
    /// Validates the record as a circuit of `g`.
    pub fn to_circuit(&self, g: &SignedGraph) -> Result<Circuit> {
        match self {
            CircuitRecord::Cycle(edges) => Circuit::positive(classify_cycle(g, edges)?),
            CircuitRecord::Barbell { cycle_a, path, cycle_b } => {
                let a = classify_cycle(g, cycle_a)?;
                let b = classify_cycle(g, cycle_b)?;
                Barbell::new(g, a, b, path.clone()).map(Circuit::Barbell)
            }
        }
    }

    /// All edge ids mentioned, in record order.
    pub fn edges(&self) -> Vec<usize> {
        match self {
            CircuitRecord::Cycle(edges) => edges.clone(),
            CircuitRecord::Barbell { cycle_a, path, cycle_b } => {
                cycle_a.iter().chain(path).chain(cycle_b).copied().collect()
            }
        }
    }
}

impl From<&Circuit> for CircuitRecord {
    fn from(c: &Circuit) -> Self {
        match c {
            Circuit::Positive(cycle) => CircuitRecord::Cycle(cycle.edges().to_vec()),
            Circuit::Barbell(b) => CircuitRecord::Barbell {
                cycle_a: b.cycle_a().edges().to_vec(),
                path: b.path().to_vec(),
                cycle_b: b.cycle_b().edges().to_vec(),
            },
        }
    }
}

fn ids(xs: &[usize]) -> String {
    xs.iter().map(|e| (e + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn write_record(r: &CircuitRecord) -> String {
    match r {
        CircuitRecord::Cycle(edges) => format!("C {}", ids(edges)),
        CircuitRecord::Barbell { cycle_a, path, cycle_b } => {
            let path = if path.is_empty() {
                String::new()
            } else {
                format!("{} ", ids(path))
            };
            format!("B {} | {}| {}", ids(cycle_a), path, ids(cycle_b))
        }
    }
}

/// Serializes a family, one circuit per line.
pub fn write_cover(fam: &CircuitFamily) -> String {
    let mut out = String::new();
    for c in fam {
        out.push_str(&write_record(&CircuitRecord::from(c)));
        out.push('\n');
    }
    out
}

fn parse_ids(line: usize, field: &str) -> Result<Vec<usize>> {
    field
        .split_whitespace()
        .map(|tok| match tok.parse::<usize>() {
            Ok(0) | Err(_) => Err(Error::Syntax {
                line,
                msg: format!("bad edge id `{tok}`"),
            }),
            Ok(id) => Ok(id - 1),
        })
        .collect()
}

/// Parses a cover file; blank lines and `#` comments are skipped.
pub fn parse_cover(text: &str) -> Result<Vec<CircuitRecord>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let s = raw.trim();
        if s.is_empty() || s.starts_with('#') {
            continue;
        }
        let tag_len = s.chars().next().map_or(0, char::len_utf8);
        let (tag, rest) = s.split_at(tag_len);
        if !rest.is_empty() && !rest.starts_with(char::is_whitespace) {
            return Err(Error::Syntax {
                line,
                msg: format!("unknown record `{s}`"),
            });
        }
        match tag {
            "C" => {
                let edges = parse_ids(line, rest)?;
                if edges.is_empty() {
                    return Err(Error::Syntax {
                        line,
                        msg: "empty cycle".into(),
                    });
                }
                out.push(CircuitRecord::Cycle(edges));
            }
            "B" => {
                let parts: Vec<&str> = rest.split('|').collect();
                if parts.len() != 3 {
                    return Err(Error::Syntax {
                        line,
                        msg: "barbell needs three `|`-separated fields".into(),
                    });
                }
                out.push(CircuitRecord::Barbell {
                    cycle_a: parse_ids(line, parts[0])?,
                    path: parse_ids(line, parts[1])?,
                    cycle_b: parse_ids(line, parts[2])?,
                });
            }
            _ => {
                return Err(Error::Syntax {
                    line,
                    msg: format!("unknown record `{s}`"),
                })
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycles::make_barbell;
    use crate::graph::Sign::{Negative as N, Positive as P};

    #[test]
    fn round_trip() {
        let g = SignedGraph::from_edges(
            6,
            [
                (0, 1, N),
                (1, 2, P),
                (0, 2, P),
                (3, 4, N),
                (4, 5, P),
                (3, 5, P),
                (2, 3, P),
            ],
        )
        .unwrap();
        let a = classify_cycle(&g, &[0, 1, 2]).unwrap();
        let b = classify_cycle(&g, &[3, 4, 5]).unwrap();
        let fam: CircuitFamily = vec![make_barbell(&g, a, b, &[6]).unwrap()].into();
        let text = write_cover(&fam);
        assert_eq!(text, "B 1 2 3 | 7 | 4 5 6\n");
        let records = parse_cover(&text).unwrap();
        assert_eq!(records[0].to_circuit(&g).unwrap(), fam.circuits()[0]);
    }

    #[test]
    fn empty_path_and_comments() {
        let r = parse_cover("# cover\n\nB 1 2 | | 3 4\nC 5 6\n").unwrap();
        assert_eq!(
            r[0],
            CircuitRecord::Barbell {
                cycle_a: vec![0, 1],
                path: vec![],
                cycle_b: vec![2, 3]
            }
        );
        assert_eq!(write_record(&r[0]), "B 1 2 | | 3 4");
        assert_eq!(r[1], CircuitRecord::Cycle(vec![4, 5]));
    }

    #[test]
    fn syntax_errors_carry_line_numbers() {
        assert!(matches!(
            parse_cover("C 1 2\nX 3\n"),
            Err(Error::Syntax { line: 2, .. })
        ));
        assert!(matches!(parse_cover("C 0 1\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_cover("B 1 2 | 3\n"), Err(Error::Syntax { line: 1, .. })));
        assert!(matches!(parse_cover("C\n"), Err(Error::Syntax { line: 1, .. })));
    }
}
