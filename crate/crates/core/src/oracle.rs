//! Exact answers at small scale: shortest circuit cover, circuit double
//! cover existence, and signed graphs with a circuit cover but no circuit
//! double cover.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::connectivity::{is_connected, is_two_edge_connected, Adjacency, UnionFind};
use crate::cycles::{enumerate_circuits, Circuit, CircuitFamily};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};
use crate::setcover::{self, Limits};
use crate::switching::{negativeness_with, NegativenessBudget};

/// Search limits; `None` means unlimited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OracleBudget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
}

impl OracleBudget {
    pub fn seconds(s: u64) -> Self {
        OracleBudget {
            max_nodes: None,
            time_limit: Some(Duration::from_secs(s)),
        }
    }

    fn limits(&self) -> Limits {
        Limits {
            max_nodes: self.max_nodes,
            deadline: self.time_limit.map(|d| Instant::now() + d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleStatus {
    Exact,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    /// Length of the witness; the optimum when `status` is exact.
    pub optimum: usize,
    pub witness: CircuitFamily,
    pub nodes: u64,
    pub status: OracleStatus,
}

#[derive(Serialize)]
struct StatsJson {
    optimum: usize,
    nodes: u64,
    status: OracleStatus,
}

impl OracleResult {
    /// `{optimum, nodes, status}` as one line of JSON.
    pub fn stats_json(&self) -> String {
        serde_json::to_string(&StatsJson {
            optimum: self.optimum,
            nodes: self.nodes,
            status: self.status,
        })
        .expect("stats serialize")
    }
}

const MAX_EDGES: usize = 64;

/// Rejects graphs whose negativeness is 1 when it can be computed; graphs
/// with no circuit cover for other reasons are caught by the enumeration.
fn reject_single_negative(g: &SignedGraph) -> Result<()> {
    if g.negative_count() > 0 && is_connected(g) {
        if let Ok(s) = negativeness_with(g, NegativenessBudget::default()) {
            if s.negativeness == 1 {
                return Err(Error::NotFlowAdmissible);
            }
        }
    }
    Ok(())
}

/// Circuits of `g` as bit masks over edge ids.
fn circuit_masks(circuits: &[Circuit]) -> Vec<u64> {
    circuits
        .iter()
        .map(|c| c.edges().iter().fold(0u64, |a, &e| a | 1 << e))
        .collect()
}

/// Minimum-length circuit cover by exact set cover over every circuit.
pub fn exact_scc(g: &SignedGraph, budget: OracleBudget) -> Result<OracleResult> {
    let m = g.edge_count();
    if m > MAX_EDGES {
        return Err(Error::Precondition(format!(
            "exact search handles at most {MAX_EDGES} edges, got {m}"
        )));
    }
    reject_single_negative(g)?;
    let circuits = enumerate_circuits(g, m + g.vertex_count());
    let masks = circuit_masks(&circuits);
    let covered = masks.iter().fold(0u64, |a, &s| a | s);
    if let Some(e) = (0..m).find(|&e| covered >> e & 1 == 0) {
        return Err(Error::NoCircuitCover(e));
    }
    let costs: Vec<usize> = circuits.iter().map(Circuit::len).collect();
    let universe = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let out = setcover::solve(universe, &masks, &costs, budget.limits());
    let (optimum, chosen) = out.best.expect("every edge lies on a circuit");
    Ok(OracleResult {
        optimum,
        witness: chosen.into_iter().map(|i| circuits[i].clone()).collect(),
        nodes: out.nodes,
        status: if out.complete {
            OracleStatus::Exact
        } else {
            OracleStatus::BudgetExceeded
        },
    })
}

/// Result of [`cdc_exists`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CdcOutcome {
    Exists(CircuitFamily),
    NotExists,
    /// The budget ran out first.
    Unknown,
}

/// Decides whether some multiset of circuits covers every edge exactly twice.
///
/// Branches on the first edge still needing coverage, choosing every pair
/// (or single circuit) through it that fits the residual demand; failed
/// residual states are memoised.
pub fn cdc_exists(g: &SignedGraph, budget: OracleBudget) -> Result<(CdcOutcome, u64)> {
    let m = g.edge_count();
    if m > MAX_EDGES {
        return Err(Error::Precondition(format!(
            "exact search handles at most {MAX_EDGES} edges, got {m}"
        )));
    }
    let circuits = enumerate_circuits(g, m + g.vertex_count());
    let masks = circuit_masks(&circuits);
    let all = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (i, &s) in masks.iter().enumerate() {
        for (e, list) in through.iter_mut().enumerate() {
            if s >> e & 1 == 1 {
                list.push(i);
            }
        }
    }
    let mut search = CdcSearch {
        masks: &masks,
        through: &through,
        failed: HashSet::new(),
        chosen: Vec::new(),
        nodes: 0,
        limits: budget.limits(),
        aborted: false,
    };
    let found = search.dfs(all, all);
    let nodes = search.nodes;
    let outcome = if found {
        let mut chosen = search.chosen;
        chosen.sort_unstable();
        CdcOutcome::Exists(chosen.into_iter().map(|i| circuits[i].clone()).collect())
    } else if search.aborted {
        CdcOutcome::Unknown
    } else {
        CdcOutcome::NotExists
    };
    Ok((outcome, nodes))
}

struct CdcSearch<'a> {
    masks: &'a [u64],
    through: &'a [Vec<usize>],
    failed: HashSet<u128>,
    chosen: Vec<usize>,
    nodes: u64,
    limits: Limits,
    aborted: bool,
}

/// Residual demand as two masks: edges needing at least one more circuit,
/// and edges needing two.
fn take(one: u64, two: u64, c: u64) -> (u64, u64) {
    ((one & !c) | (two & c), two & !c)
}

impl CdcSearch<'_> {
    fn over_budget(&mut self) -> bool {
        if let Some(max) = self.limits.max_nodes {
            if self.nodes >= max {
                self.aborted = true;
            }
        }
        if let Some(deadline) = self.limits.deadline {
            if self.nodes.is_multiple_of(256) && Instant::now() >= deadline {
                self.aborted = true;
            }
        }
        self.aborted
    }

    /// Every edge with positive demand lies on a circuit that still fits.
    fn feasible(&self, one: u64) -> bool {
        let mut reach = 0u64;
        for &s in self.masks {
            if s & !one == 0 {
                reach |= s;
            }
        }
        one & !reach == 0
    }

    fn dfs(&mut self, one: u64, two: u64) -> bool {
        if one == 0 {
            return true;
        }
        self.nodes += 1;
        if self.over_budget() {
            return false;
        }
        let key = (one as u128) << 64 | two as u128;
        if self.failed.contains(&key) || !self.feasible(one) {
            return false;
        }
        let e = one.trailing_zeros() as usize;
        let fits: Vec<usize> = self.through[e]
            .iter()
            .copied()
            .filter(|&i| self.masks[i] & !one == 0)
            .collect();
        if two >> e & 1 == 1 {
            for (a, &i) in fits.iter().enumerate() {
                let (one1, two1) = take(one, two, self.masks[i]);
                for &j in &fits[a..] {
                    if self.masks[j] & !one1 != 0 {
                        continue;
                    }
                    let (one2, two2) = take(one1, two1, self.masks[j]);
                    self.chosen.extend([i, j]);
                    if self.dfs(one2, two2) {
                        return true;
                    }
                    self.chosen.truncate(self.chosen.len() - 2);
                    if self.aborted {
                        return false;
                    }
                }
            }
        } else {
            for &i in &fits {
                let (one1, two1) = take(one, two, self.masks[i]);
                self.chosen.push(i);
                if self.dfs(one1, two1) {
                    return true;
                }
                self.chosen.pop();
                if self.aborted {
                    return false;
                }
            }
        }
        if !self.aborted {
            self.failed.insert(key);
        }
        false
    }
}

/// Outcome of [`barbell_cdc_property`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarbellCheck {
    pub holds: bool,
    /// A barbell member and one of its degree-3 vertices that no other
    /// barbell of the family has as a degree-3 vertex.
    pub witness: Option<(usize, usize)>,
}

/// Checks that every degree-3 vertex of a barbell in a circuit double cover
/// of a cubic graph is a degree-3 vertex of another barbell in the cover.
pub fn barbell_cdc_property(g: &SignedGraph, fam: &CircuitFamily) -> Result<BarbellCheck> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    for c in fam {
        let record = crate::format::CircuitRecord::from(c);
        record.to_circuit(g)?;
    }
    let coverage = fam.coverage(g.edge_count());
    if let Some(e) = (0..g.edge_count()).find(|&e| coverage[e] != 2) {
        return Err(Error::Precondition(format!(
            "not a double cover: edge {} is covered {} times",
            e + 1,
            coverage[e]
        )));
    }
    let branch_vertices: Vec<Option<Vec<usize>>> = fam
        .iter()
        .map(|c| {
            c.is_barbell().then(|| {
                let adj = Adjacency::new(g, c.edges().iter().copied());
                (0..g.vertex_count()).filter(|&v| adj.degree(v) == 3).collect()
            })
        })
        .collect();
    for (i, own) in branch_vertices.iter().enumerate() {
        let Some(own) = own else { continue };
        for &v in own {
            let shared = branch_vertices
                .iter()
                .enumerate()
                .any(|(j, other)| j != i && other.as_ref().is_some_and(|o| o.contains(&v)));
            if !shared {
                return Ok(BarbellCheck {
                    holds: false,
                    witness: Some((i, v)),
                });
            }
        }
    }
    Ok(BarbellCheck {
        holds: true,
        witness: None,
    })
}

/// A signed cubic graph built from a 2-edge-cut, with the choices recorded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoCdcInstance {
    pub graph: SignedGraph,
    pub cut: (usize, usize),
    pub negatives: (usize, usize),
}

impl NoCdcInstance {
    /// Graph text preceded by a comment naming the cut and negative edges.
    pub fn to_text(&self) -> String {
        format!(
            "# gen-no-cdc cut {} {} negatives {} {}\n{}",
            self.cut.0 + 1,
            self.cut.1 + 1,
            self.negatives.0 + 1,
            self.negatives.1 + 1,
            self.graph.to_text()
        )
    }
}

fn is_cut(g: &SignedGraph, a: usize, b: usize) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    let mut parts = g.vertex_count();
    for (e, edge) in g.edges().iter().enumerate() {
        if e != a && e != b && uf.union(edge.u, edge.v) {
            parts -= 1;
        }
    }
    parts > 1
}

/// Signs the two edges next to a 2-edge-cut `{e, e'}` negative: with
/// `e = uv`, the smallest-id edges at `u` and at `v` outside the cut.
pub fn gen_no_cdc(g: &SignedGraph, cut: Option<(usize, usize)>) -> Result<NoCdcInstance> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if g.negative_count() > 0 {
        return Err(Error::Precondition("graph has negative edges".into()));
    }
    if !is_two_edge_connected(g).two_edge_connected() {
        return Err(Error::Precondition("graph is not 2-edge-connected".into()));
    }
    let m = g.edge_count();
    let (e, f) = match cut {
        Some((a, b)) => {
            for x in [a, b] {
                if x >= m {
                    return Err(Error::UnknownEdge(x));
                }
            }
            if a == b || !is_cut(g, a, b) {
                return Err(Error::Precondition(format!(
                    "edges {} and {} do not form a cut",
                    a + 1,
                    b + 1
                )));
            }
            (a, b)
        }
        None => (0..m)
            .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
            .find(|&(a, b)| is_cut(g, a, b))
            .ok_or_else(|| Error::Precondition("graph is 3-edge-connected".into()))?,
    };
    let (u, v) = (g.edge(e).u, g.edge(e).v);
    let pick = |x: usize| {
        g.incident(x)
            .iter()
            .copied()
            .filter(|&y| y != e && y != f)
            .min()
            .expect("cubic vertex has an edge outside the cut")
    };
    let (e1, e2) = (pick(u), pick(v));
    let mut signs = vec![Sign::Positive; m];
    signs[e1] = Sign::Negative;
    signs[e2] = Sign::Negative;
    Ok(NoCdcInstance {
        graph: g.with_signature(&signs),
        cut: (e, f),
        negatives: (e1, e2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Negative as N, Positive as P};

    fn k4(neg: &[usize]) -> SignedGraph {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        SignedGraph::from_edges(
            4,
            pairs
                .iter()
                .enumerate()
                .map(|(i, &(u, v))| (u, v, if neg.contains(&i) { N } else { P })),
        )
        .unwrap()
    }

    /// Two copies of K4 minus an edge, joined by two edges.
    fn two_diamonds() -> SignedGraph {
        let mut g = SignedGraph::new(8);
        for base in [0, 4] {
            for (a, b) in [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)] {
                g.add_edge(base + a, base + b, P).unwrap();
            }
        }
        g.add_edge(0, 4, P).unwrap();
        g.add_edge(3, 7, P).unwrap();
        g
    }

    /// Minimum circuit cover over all subsets of circuits.
    fn brute_scc(g: &SignedGraph) -> Option<usize> {
        let circuits = enumerate_circuits(g, g.edge_count() + g.vertex_count());
        let m = g.edge_count();
        (0u32..1 << circuits.len())
            .filter_map(|mask| {
                let mut cov = vec![false; m];
                let mut len = 0;
                for (i, c) in circuits.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        len += c.len();
                        c.edges().iter().for_each(|&e| cov[e] = true);
                    }
                }
                cov.iter().all(|&b| b).then_some(len)
            })
            .min()
    }

    #[test]
    fn single_cycle_is_its_own_cover() {
        let g = SignedGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5, P))).unwrap();
        let r = exact_scc(&g, OracleBudget::default()).unwrap();
        assert_eq!(r.optimum, 5);
        assert_eq!(r.witness.len(), 1);
        assert_eq!(r.status, OracleStatus::Exact);
    }

    #[test]
    fn k4_matches_brute_force() {
        for neg in [vec![], vec![0, 5]] {
            let g = k4(&neg);
            let r = exact_scc(&g, OracleBudget::default()).unwrap();
            assert_eq!(Some(r.optimum), brute_scc(&g));
            assert_eq!(r.witness.length(), r.optimum);
            assert!(9 * r.optimum < 23 * 6);
        }
    }

    #[test]
    fn single_negative_edge_has_no_cover() {
        assert!(matches!(
            exact_scc(&k4(&[0]), OracleBudget::default()),
            Err(Error::NotFlowAdmissible)
        ));
    }

    #[test]
    fn stats_json_shape() {
        let r = exact_scc(&k4(&[]), OracleBudget::default()).unwrap();
        assert_eq!(
            r.stats_json(),
            format!(
                "{{\"optimum\":{},\"nodes\":{},\"status\":\"exact\"}}",
                r.optimum, r.nodes
            )
        );
    }

    #[test]
    fn k4_has_a_double_cover() {
        let g = k4(&[]);
        let (out, _) = cdc_exists(&g, OracleBudget::default()).unwrap();
        let CdcOutcome::Exists(fam) = out else {
            panic!("{out:?}")
        };
        assert!(fam.coverage(6).iter().all(|&c| c == 2));
        assert!(barbell_cdc_property(&g, &fam).unwrap().holds);
    }

    #[test]
    fn negative_cycle_alone_has_no_double_cover() {
        let g = SignedGraph::from_edges(3, [(0, 1, N), (1, 2, P), (0, 2, P)]).unwrap();
        assert_eq!(
            cdc_exists(&g, OracleBudget::default()).unwrap().0,
            CdcOutcome::NotExists
        );
    }

    #[test]
    fn generated_instance_has_no_double_cover() {
        let inst = gen_no_cdc(&two_diamonds(), None).unwrap();
        assert_eq!(inst.graph.negative_count(), 2);
        let eps = negativeness_with(&inst.graph, NegativenessBudget::default()).unwrap();
        assert_eq!(eps.negativeness, 2);
        assert_eq!(
            cdc_exists(&inst.graph, OracleBudget::default()).unwrap().0,
            CdcOutcome::NotExists
        );
        assert!(inst.to_text().starts_with("# gen-no-cdc cut"));
    }

    #[test]
    fn generator_rejects_three_edge_connected_graphs() {
        assert!(matches!(gen_no_cdc(&k4(&[]), None), Err(Error::Precondition(_))));
    }

    #[test]
    fn single_cover_is_not_a_double_cover() {
        let g = k4(&[]);
        let r = exact_scc(&g, OracleBudget::default()).unwrap();
        assert!(matches!(
            barbell_cdc_property(&g, &r.witness),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn node_budget_gives_unknown() {
        let g = two_diamonds();
        let budget = OracleBudget {
            max_nodes: Some(1),
            time_limit: None,
        };
        assert_eq!(cdc_exists(&g, budget).unwrap().0, CdcOutcome::Unknown);
    }
}
