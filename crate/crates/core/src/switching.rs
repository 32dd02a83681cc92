//! Switching equivalence and exact negativeness (frustration index).
//!
//! Switching at a vertex set `U` flips the sign of every edge in the cut
//! `δ(U)`. Cycle signs are invariant under switching, so every circuit of a
//! signed graph is a circuit of any equivalent one.

use rayon::prelude::*;

use crate::connectivity::{is_connected, is_two_edge_connected};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

/// A vertex set together with the edge cut it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Switching {
    vertices: Vec<usize>,
    cut: Vec<usize>,
}

impl Switching {
    pub fn new(g: &SignedGraph, vertices: &[usize]) -> Result<Self> {
        let mut inside = vec![false; g.vertex_count()];
        for &v in vertices {
            if v >= g.vertex_count() {
                return Err(Error::UnknownVertex(v));
            }
            inside[v] = true;
        }
        let cut = (0..g.edge_count())
            .filter(|&e| inside[g.edge(e).u] != inside[g.edge(e).v])
            .collect();
        let mut vertices = vertices.to_vec();
        vertices.sort_unstable();
        vertices.dedup();
        Ok(Switching { vertices, cut })
    }

    pub fn empty() -> Self {
        Switching {
            vertices: Vec::new(),
            cut: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn cut(&self) -> &[usize] {
        &self.cut
    }

    pub fn apply(&self, g: &SignedGraph) -> SignedGraph {
        let mut signs = g.signature();
        for &e in &self.cut {
            signs[e] = signs[e].flip();
        }
        g.with_signature(&signs)
    }
}

/// Flips the sign of every edge with exactly one endpoint in `u_set`.
pub fn switch(g: &SignedGraph, u_set: &[usize]) -> Result<SignedGraph> {
    Ok(Switching::new(g, u_set)?.apply(g))
}

/// Largest vertex count for which [`negativeness`] enumerates switchings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegativenessBudget {
    pub max_vertices: usize,
}

impl Default for NegativenessBudget {
    fn default() -> Self {
        NegativenessBudget { max_vertices: 26 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureSummary {
    pub negative_edge_count: usize,
    /// Minimum number of negative edges over all equivalent signatures.
    pub negativeness: usize,
    /// Lexicographically smallest vertex set whose switching attains the minimum.
    pub minimizing_switching: Switching,
    /// 2-edge-connected and negativeness different from 1.
    pub flow_admissible: bool,
}

pub fn negativeness(g: &SignedGraph) -> Result<SignatureSummary> {
    negativeness_with(g, NegativenessBudget::default())
}

/// Exact negativeness by Gray-code enumeration of all `2^(n-1)` switchings.
///
/// Vertex 0 is kept outside the enumerated set; the reported switching is the
/// lexicographically smaller of each enumerated set and its complement, and
/// among all optimal signatures the smallest such set wins.
pub fn negativeness_with(g: &SignedGraph, budget: NegativenessBudget) -> Result<SignatureSummary> {
    let n = g.vertex_count();
    if n > budget.max_vertices {
        return Err(Error::ExactUnavailable {
            n,
            max: budget.max_vertices,
        });
    }
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    let negative_edge_count = g.negative_count();
    let (negativeness, vertices) = if n <= 1 {
        (negative_edge_count, Vec::new())
    } else {
        search_minimum(g)
    };
    let minimizing_switching = Switching::new(g, &vertices)?;
    let flow_admissible = is_two_edge_connected(g).two_edge_connected() && negativeness != 1;
    Ok(SignatureSummary {
        negative_edge_count,
        negativeness,
        minimizing_switching,
        flow_admissible,
    })
}

/// Candidate optimum: negative count and canonical vertex set.
type Best = (usize, Vec<usize>);

fn search_minimum(g: &SignedGraph) -> Best {
    let n = g.vertex_count();
    let free = n - 1; // vertices 1..n are enumerated, vertex 0 stays outside
    let high = free.min(6).min(free.saturating_sub(10));
    let low = free - high;

    (0u64..1u64 << high)
        .into_par_iter()
        .map(|prefix| {
            let mut negative: Vec<bool> = g.edges().iter().map(|e| e.sign.is_negative()).collect();
            let mut count = negative.iter().filter(|&&b| b).count();
            let mut mask: u64 = 0;
            let flip = |v: usize, negative: &mut Vec<bool>, count: &mut usize| {
                for &e in g.incident(v) {
                    if negative[e] {
                        *count -= 1;
                    } else {
                        *count += 1;
                    }
                    negative[e] = !negative[e];
                }
            };
            for bit in 0..high {
                if prefix >> bit & 1 == 1 {
                    let v = 1 + low + bit;
                    flip(v, &mut negative, &mut count);
                    mask |= 1 << (low + bit);
                }
            }
            let mut best: Best = (count, canonical_set(mask, n));
            for t in 1u64..1u64 << low {
                let bit = t.trailing_zeros() as usize;
                flip(1 + bit, &mut negative, &mut count);
                mask ^= 1 << bit;
                if count <= best.0 {
                    let set = canonical_set(mask, n);
                    if count < best.0 || set < best.1 {
                        best = (count, set);
                    }
                }
            }
            best
        })
        .reduce_with(|a, b| if b < a { b } else { a })
        .expect("at least one switching")
}

/// `mask` encodes a subset of vertices `1..n` (bit `i` is vertex `i + 1`).
/// Returns the lexicographically smaller of that set and its complement.
fn canonical_set(mask: u64, n: usize) -> Vec<usize> {
    if mask == 0 {
        return Vec::new();
    }
    (0..n).filter(|&v| v == 0 || mask >> (v - 1) & 1 == 0).collect()
}

/// Switches to an equivalent signature with exactly `ε` negative edges.
pub fn minimize_signature(g: &SignedGraph) -> Result<SignedGraph> {
    minimize_signature_with(g, NegativenessBudget::default())
}

pub fn minimize_signature_with(g: &SignedGraph, budget: NegativenessBudget) -> Result<SignedGraph> {
    let summary = negativeness_with(g, budget)?;
    Ok(summary.minimizing_switching.apply(g))
}

/// True when every cycle is positive, i.e. the vertices can be 2-coloured so
/// that exactly the negative edges join different colours.
pub fn is_balanced(g: &SignedGraph) -> bool {
    let n = g.vertex_count();
    let mut side: Vec<Option<bool>> = vec![None; n];
    for s in 0..n {
        if side[s].is_some() {
            continue;
        }
        side[s] = Some(false);
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            let sx = side[x].unwrap();
            for &e in g.incident(x) {
                let edge = g.edge(e);
                let y = edge.other(x);
                let want = sx ^ (edge.sign == Sign::Negative);
                match side[y] {
                    None => {
                        side[y] = Some(want);
                        stack.push(y);
                    }
                    Some(sy) if sy != want => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}
