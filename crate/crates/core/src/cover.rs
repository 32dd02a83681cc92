//! Circuit-cover pipelines for cubic signed graphs, the cover verifier and
//! the cycle-cover backend for unsigned (all-positive) graphs.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

use crate::connectivity::{bfs_spanning_tree, bridges_in, edge_components, is_two_edge_connected, Adjacency};
use crate::cycles::{
    circuits_in, cycles_in, disjoint_paths, enumerate_circuits, fundamental_cycles, make_barbell,
    shortest_negative_circuits, symmetric_difference_cycles, Circuit, CircuitFamily, Cycle,
};
use crate::cycletree::{cycle_tree_cover, extract_cycle_tree, minimize_cycle_count_with, TreePortfolio};
use crate::error::{Error, Result};
use crate::format::{write_cover, CircuitRecord};
use crate::graph::SignedGraph;
use crate::oracle::{exact_scc, OracleBudget, OracleStatus};
use crate::setcover::{self, Limits};
use crate::switching::{negativeness_with, NegativenessBudget};

/// Outcome of checking a family of circuits against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub valid: bool,
    pub length: usize,
    pub m: usize,
    /// `9ℓ < 23m`
    pub bound_23_9: bool,
    /// `9ℓ < 26m`
    pub bound_26_9: bool,
    pub branch: String,
    pub candidate: String,
    /// Edges covered by no valid member.
    pub uncovered: Vec<usize>,
    pub per_edge_coverage: Vec<u32>,
    /// Index and reason for every member that is not a circuit of the graph.
    pub invalid_members: Vec<(usize, String)>,
    /// Pipeline length minus the exact optimum, when the oracle ran.
    pub oracle_gap: Option<i64>,
    pub negativeness: Option<usize>,
    /// `9ℓ ≤ 23m − 3ε − 12`, checked by the even pipeline when `ε ≥ 2`.
    pub sharp_even_bound: Option<bool>,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    valid: bool,
    length: usize,
    m: usize,
    bound_23_9: bool,
    bound_26_9: bool,
    branch: &'a str,
    candidate: &'a str,
    uncovered: Vec<usize>,
    coverage_histogram: BTreeMap<u32, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_gap: Option<i64>,
}

impl CoverReport {
    /// Number of edges covered exactly `k` times, for each `k` that occurs.
    pub fn coverage_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for &c in &self.per_edge_coverage {
            *h.entry(c).or_insert(0) += 1;
        }
        h
    }

    /// Single-line JSON with keys in a fixed order; edge ids are 1-based.
    pub fn to_json(&self) -> String {
        let doc = ReportJson {
            valid: self.valid,
            length: self.length,
            m: self.m,
            bound_23_9: self.bound_23_9,
            bound_26_9: self.bound_26_9,
            branch: &self.branch,
            candidate: &self.candidate,
            uncovered: self.uncovered.iter().map(|e| e + 1).collect(),
            coverage_histogram: self.coverage_histogram(),
            oracle_gap: self.oracle_gap,
        };
        serde_json::to_string(&doc).expect("report serializes")
    }

    pub fn set_oracle_optimum(&mut self, optimum: usize) {
        self.oracle_gap = Some(self.length as i64 - optimum as i64);
    }

    /// The bound the pipeline is expected to meet: the sharp even chain when
    /// it was checked, otherwise 23/9 for even ε and 26/9 for odd ε.
    pub fn within_expected_bound(&self) -> bool {
        match (self.sharp_even_bound, self.negativeness) {
            (Some(sharp), _) => sharp && self.bound_23_9,
            (None, Some(eps)) if eps % 2 == 0 => self.bound_23_9,
            _ => self.bound_26_9,
        }
    }
}

/// Checks every record as a circuit of `g` and tallies coverage. Invalid
/// members count towards the length but cover nothing.
pub fn verify_records(g: &SignedGraph, records: &[CircuitRecord]) -> CoverReport {
    let m = g.edge_count();
    let mut coverage = vec![0u32; m];
    let mut length = 0;
    let mut invalid = Vec::new();
    for (i, r) in records.iter().enumerate() {
        length += r.edges().len();
        match r.to_circuit(g) {
            Ok(c) => {
                for &e in c.edges() {
                    coverage[e] += 1;
                }
            }
            Err(err) => invalid.push((i, err.to_string())),
        }
    }
    let uncovered: Vec<usize> = (0..m).filter(|&e| coverage[e] == 0).collect();
    CoverReport {
        valid: uncovered.is_empty() && invalid.is_empty(),
        length,
        m,
        bound_23_9: 9 * length < 23 * m,
        bound_26_9: 9 * length < 26 * m,
        branch: String::new(),
        candidate: String::new(),
        uncovered,
        per_edge_coverage: coverage,
        invalid_members: invalid,
        oracle_gap: None,
        negativeness: None,
        sharp_even_bound: None,
    }
}

pub fn verify_cover(g: &SignedGraph, fam: &CircuitFamily) -> CoverReport {
    let records: Vec<CircuitRecord> = fam.iter().map(CircuitRecord::from).collect();
    verify_records(g, &records)
}

/// Tuning for the pipelines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoverOptions {
    pub negativeness: NegativenessBudget,
    pub portfolio: TreePortfolio,
    /// Components with at most this many edges get an exact minimum cycle
    /// cover; larger ones use the greedy backend.
    pub exact_cycle_cover_cap: usize,
}

impl Default for CoverOptions {
    fn default() -> Self {
        CoverOptions {
            negativeness: NegativenessBudget::default(),
            portfolio: TreePortfolio::default(),
            exact_cycle_cover_cap: 30,
        }
    }
}

pub fn bridgeless_cycle_cover(g: &SignedGraph, edges: &[usize]) -> Result<CircuitFamily> {
    bridgeless_cycle_cover_with(g, edges, CoverOptions::default().exact_cycle_cover_cap)
}

/// Cycles covering every edge of the all-positive, bridgeless subgraph on
/// `edges`, with total length at most 5/3 of its size per component.
pub fn bridgeless_cycle_cover_with(g: &SignedGraph, edges: &[usize], exact_cap: usize) -> Result<CircuitFamily> {
    if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::UnknownEdge(e));
    }
    if let Some(&e) = edges.iter().find(|&&e| g.sign(e).is_negative()) {
        return Err(Error::Precondition(format!("edge {} is negative", e + 1)));
    }
    if let Some(&b) = bridges_in(&Adjacency::new(g, edges.iter().copied())).first() {
        return Err(Error::Precondition(format!("edge {} is a bridge", b + 1)));
    }
    let mut fam = CircuitFamily::new();
    for comp in edge_components(g, edges) {
        let cycles = if comp.len() <= exact_cap.min(64) {
            exact_cycle_cover(g, &comp)?
        } else {
            greedy_cycle_cover(g, &comp)?
        };
        let len: usize = cycles.iter().map(Cycle::len).sum();
        if 3 * len > 5 * comp.len() {
            return Err(Error::BoundViolation(format!(
                "cycle cover of length {len} exceeds 5/3 of a {}-edge component containing edge {}",
                comp.len(),
                comp[0] + 1
            )));
        }
        for c in cycles {
            fam.push(Circuit::positive(c)?);
        }
    }
    Ok(fam)
}

fn exact_cycle_cover(g: &SignedGraph, comp: &[usize]) -> Result<Vec<Cycle>> {
    let adj = Adjacency::new(g, comp.iter().copied());
    let cycles = cycles_in(g, &adj, g.vertices_of(comp).len());
    let bit = |e: usize| 1u64 << comp.binary_search(&e).expect("cycle edge in component");
    let sets: Vec<u64> = cycles
        .iter()
        .map(|c| c.edges().iter().fold(0, |a, &e| a | bit(e)))
        .collect();
    let costs: Vec<usize> = cycles.iter().map(Cycle::len).collect();
    let universe = if comp.len() == 64 {
        u64::MAX
    } else {
        (1u64 << comp.len()) - 1
    };
    let out = setcover::solve(universe, &sets, &costs, Limits::default());
    let (_, chosen) = out
        .best
        .ok_or_else(|| Error::Internal(format!("no cycle through edge {}", comp[0] + 1)))?;
    Ok(chosen.into_iter().map(|i| cycles[i].clone()).collect())
}

/// Shortest cycle through each still-uncovered edge, then drop members whose
/// edges are all covered elsewhere, longest first.
fn greedy_cycle_cover(g: &SignedGraph, comp: &[usize]) -> Result<Vec<Cycle>> {
    let adj = Adjacency::new(g, comp.iter().copied());
    let mut coverage = vec![0u32; g.edge_count()];
    let mut chosen: Vec<Cycle> = Vec::new();
    for &e in comp {
        if coverage[e] > 0 {
            continue;
        }
        let c = shortest_cycle_through(g, &adj, e)
            .ok_or_else(|| Error::Precondition(format!("edge {} is a bridge", e + 1)))?;
        for &f in c.edges() {
            coverage[f] += 1;
        }
        chosen.push(c);
    }
    let mut order: Vec<usize> = (0..chosen.len()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(chosen[i].len()), i));
    let mut keep = vec![true; chosen.len()];
    for i in order {
        if chosen[i].edges().iter().all(|&f| coverage[f] >= 2) {
            keep[i] = false;
            for &f in chosen[i].edges() {
                coverage[f] -= 1;
            }
        }
    }
    Ok(chosen
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(c, _)| c)
        .collect())
}

/// BFS from one end of `e` to the other avoiding `e`.
fn shortest_cycle_through(g: &SignedGraph, adj: &Adjacency, e: usize) -> Option<Cycle> {
    let (s, t) = (g.edge(e).u, g.edge(e).v);
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(x) = queue.pop_front() {
        if x == t {
            break;
        }
        for &(y, f) in &adj.adj[x] {
            if f != e && !seen[y] {
                seen[y] = true;
                prev[y] = Some((x, f));
                queue.push_back(y);
            }
        }
    }
    if !seen[t] {
        return None;
    }
    let mut edges = vec![e];
    let mut x = t;
    while let Some((p, f)) = prev[x] {
        edges.push(f);
        x = p;
    }
    edges.sort_unstable();
    Some(Cycle::from_sorted_unchecked(g, edges))
}

/// Whether every negative edge lies on a cycle of some member and every
/// cutedge of the positive subgraph is covered. Expects a signature with the
/// minimum number of negative edges; under that assumption the first
/// condition implies the second, and a violation is reported as an error.
pub fn check_cutedge_coverage(g: &SignedGraph, fam: &CircuitFamily) -> Result<bool> {
    let negatives_on_cycles = g
        .negative_edges()
        .into_iter()
        .all(|e| fam.iter().any(|c| c.contains_in_cycle(e)));
    let coverage = fam.coverage(g.edge_count());
    let cutedges = bridges_in(&Adjacency::new(g, g.positive_edges()));
    let cutedges_covered = cutedges.iter().all(|&e| coverage[e] > 0);
    if negatives_on_cycles && !cutedges_covered {
        let e = cutedges
            .iter()
            .find(|&&e| coverage[e] == 0)
            .expect("some cutedge uncovered");
        return Err(Error::Internal(format!(
            "negative edges all lie on cycles of the family but positive cutedge {} is uncovered",
            e + 1
        )));
    }
    Ok(negatives_on_cycles && cutedges_covered)
}

fn require_cubic_bridgeless(g: &SignedGraph) -> Result<()> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    if !is_two_edge_connected(g).two_edge_connected() {
        return Err(Error::Precondition("graph is not 2-edge-connected".into()));
    }
    Ok(())
}

/// Bridgeless cover of the positive subgraph after deleting its cutedges.
fn positive_core_cover(g: &SignedGraph, opts: &CoverOptions) -> Result<CircuitFamily> {
    let positive = g.positive_edges();
    let cutedges = bridges_in(&Adjacency::new(g, positive.iter().copied()));
    let core: Vec<usize> = positive
        .into_iter()
        .filter(|e| cutedges.binary_search(e).is_err())
        .collect();
    bridgeless_cycle_cover_with(g, &core, opts.exact_cycle_cover_cap)
}

fn finish(g: &SignedGraph, fam: &CircuitFamily, eps: usize, branch: &str, candidate: &str) -> Result<CoverReport> {
    let mut report = verify_cover(g, fam);
    if !report.valid {
        return Err(Error::Internal(format!(
            "{branch} pipeline produced an invalid cover (uncovered {:?}, invalid members {:?})",
            report.uncovered.iter().map(|e| e + 1).collect::<Vec<_>>(),
            report.invalid_members
        )));
    }
    report.branch = branch.into();
    report.candidate = candidate.into();
    report.negativeness = Some(eps);
    Ok(report)
}

pub fn cover_even(g: &SignedGraph) -> Result<(CircuitFamily, CoverReport)> {
    cover_even_with(g, &CoverOptions::default())
}

/// Cover of a cubic 2-edge-connected graph with even negativeness: a
/// cycle-tree over all negative edges of a minimum signature plus cycle covers
/// of the positive part.
pub fn cover_even_with(g: &SignedGraph, opts: &CoverOptions) -> Result<(CircuitFamily, CoverReport)> {
    require_cubic_bridgeless(g)?;
    let summary = negativeness_with(g, opts.negativeness)?;
    let eps = summary.negativeness;
    if eps % 2 == 1 {
        return Err(Error::Precondition(format!("negativeness {eps} is odd")));
    }
    cover_even_minimized(g, &summary.minimizing_switching.apply(g), eps, opts)
}

fn cover_even_minimized(
    g: &SignedGraph,
    gm: &SignedGraph,
    eps: usize,
    opts: &CoverOptions,
) -> Result<(CircuitFamily, CoverReport)> {
    if eps == 0 {
        let fam = bridgeless_cycle_cover_with(
            gm,
            &(0..gm.edge_count()).collect::<Vec<_>>(),
            opts.exact_cycle_cover_cap,
        )?;
        let report = finish(g, &fam, eps, "even", "cycle cover")?;
        return Ok((fam, report));
    }
    let tree = bfs_spanning_tree(gm, &gm.positive_edges(), 0)
        .ok_or_else(|| Error::Internal("positive subgraph of a minimum signature is disconnected".into()))?;
    let h = extract_cycle_tree(gm, &tree, None)?;
    let mut fam = cycle_tree_cover(&h)?;
    fam.extend(positive_core_cover(gm, opts)?);
    let mut report = finish(g, &fam, eps, "even", "cycle-tree")?;
    let sharp = 9 * report.length + 3 * eps + 12 <= 23 * report.m;
    report.sharp_even_bound = Some(sharp);
    Ok((fam, report))
}

pub fn cover_main(g: &SignedGraph) -> Result<(CircuitFamily, CoverReport)> {
    cover_main_with(g, &CoverOptions::default())
}

/// Cover of a cubic 2-edge-connected flow-admissible graph.
pub fn cover_main_with(g: &SignedGraph, opts: &CoverOptions) -> Result<(CircuitFamily, CoverReport)> {
    require_cubic_bridgeless(g)?;
    let summary = negativeness_with(g, opts.negativeness)?;
    let eps = summary.negativeness;
    if eps == 1 {
        return Err(Error::NotFlowAdmissible);
    }
    let gm = summary.minimizing_switching.apply(g);
    if eps % 2 == 0 {
        return cover_even_minimized(g, &gm, eps, opts);
    }
    let shortest = shortest_negative_circuits(&gm);
    let gs = shortest
        .first()
        .map(Circuit::len)
        .ok_or_else(|| Error::Internal("no circuit contains a negative edge".into()))?;
    let m = gm.edge_count();
    let f_plus = positive_core_cover(&gm, opts)?;
    if 3 * gs <= m + 3 {
        let c = shortest[0].clone();
        let e = gm
            .negative_edges()
            .into_iter()
            .find(|&e| c.contains_in_cycle(e))
            .ok_or_else(|| Error::Internal("shortest circuit has no negative edge on a cycle".into()))?;
        let h = minimize_cycle_count_with(&gm, Some(e), opts.portfolio)?;
        let mut fam = f_plus;
        fam.extend(cycle_tree_cover(&h)?);
        fam.push(c);
        let report = finish(
            g,
            &fam,
            eps,
            "A",
            &format!("shortest circuit, cycle-tree without edge {}", e + 1),
        )?;
        return Ok((fam, report));
    }
    branch_b(g, &gm, eps, f_plus, opts)
}

/// Large signed girth: shortest valid cover among candidates built from the
/// cycle-trees `H_e` and the circuits through one or two negative edges.
fn branch_b(
    g: &SignedGraph,
    gm: &SignedGraph,
    eps: usize,
    f_plus: CircuitFamily,
    opts: &CoverOptions,
) -> Result<(CircuitFamily, CoverReport)> {
    let negatives = gm.negative_edges();
    let circuits = enumerate_circuits(gm, gm.vertex_count() + 1);
    let eligible: Vec<usize> = negatives
        .iter()
        .copied()
        .filter(|&e| circuits.iter().any(|c| c.contains_in_cycle(e)))
        .collect();
    let tree_covers: BTreeMap<usize, Result<CircuitFamily>> = eligible
        .par_iter()
        .map(|&e| {
            let fam = minimize_cycle_count_with(gm, Some(e), opts.portfolio).and_then(|h| cycle_tree_cover(&h));
            (e, fam)
        })
        .collect();

    // (description, edge whose cycle-tree is used, extra circuit)
    let mut seeds: Vec<(String, usize, Circuit)> = Vec::new();
    for &e in &eligible {
        let best = circuits
            .iter()
            .filter(|c| c.contains_in_cycle(e))
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.edges().cmp(b.edges())))
            .expect("eligible edge lies on a circuit cycle");
        seeds.push((format!("shortest circuit through edge {}", e + 1), e, best.clone()));
    }
    let tree = bfs_spanning_tree(gm, &gm.positive_edges(), 0)
        .ok_or_else(|| Error::Internal("positive subgraph of a minimum signature is disconnected".into()))?;
    let fundamentals = fundamental_cycles(gm, &tree, &negatives)?;
    for i in 0..negatives.len() {
        for j in i + 1..negatives.len() {
            let (ei, ej) = (negatives[i], negatives[j]);
            for (label, c) in pair_circuits(gm, &fundamentals[i], &fundamentals[j], ei, ej)? {
                for e in [ei, ej] {
                    seeds.push((format!("edges {} and {}: {label}", ei + 1, ej + 1), e, c.clone()));
                }
            }
        }
    }

    let scored: Vec<(usize, String, String, CircuitFamily)> = seeds
        .par_iter()
        .filter_map(|(label, e, c)| {
            let tc = tree_covers.get(e)?.as_ref().ok()?;
            let mut fam = f_plus.clone();
            fam.extend(tc.clone());
            fam.push(c.clone());
            let report = verify_cover(g, &fam);
            report
                .valid
                .then(|| (fam.length(), write_cover(&fam), label.clone(), fam))
        })
        .collect();
    let tried = seeds.len();
    match scored.into_iter().min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1))) {
        Some((_, _, label, fam)) => {
            let report = finish(g, &fam, eps, "B", &format!("{label} ({tried} candidates)"))?;
            Ok((fam, report))
        }
        None => {
            let oracle = exact_scc(g, OracleBudget::default())
                .map_err(|e| Error::Internal(format!("no valid candidate among {tried}; oracle failed: {e}")))?;
            if oracle.status != OracleStatus::Exact && oracle.witness.is_empty() {
                return Err(Error::BudgetExceeded);
            }
            let report = finish(
                g,
                &oracle.witness,
                eps,
                "oracle",
                &format!("no valid candidate among {tried}"),
            )?;
            Ok((oracle.witness, report))
        }
    }
}

/// Circuits inside `D_i Δ D_j` through both `ei` and `ej`: the positive cycle
/// containing both, or barbells closing two negative cycles along each of two
/// disjoint connecting paths.
fn pair_circuits(g: &SignedGraph, di: &Cycle, dj: &Cycle, ei: usize, ej: usize) -> Result<Vec<(String, Circuit)>> {
    let parts = symmetric_difference_cycles(g, &[di.edges().to_vec(), dj.edges().to_vec()])?;
    let find = |e: usize| parts.iter().find(|c| c.contains(e));
    let (Some(ci), Some(cj)) = (find(ei), find(ej)) else {
        return Ok(Vec::new());
    };
    if ci == cj {
        return Ok(if ci.is_positive() {
            vec![("positive cycle".to_string(), Circuit::positive(ci.clone())?)]
        } else {
            Vec::new()
        });
    }
    if ci.is_positive() || cj.is_positive() {
        return Ok(Vec::new());
    }
    let (vi, vj) = (ci.vertices(g), cj.vertices(g));
    let Ok(paths) = disjoint_paths(g, &vi, &vj, 2) else {
        return Ok(Vec::new());
    };
    let mut out = Vec::new();
    for (k, p) in paths.iter().enumerate() {
        if let Ok(b) = make_barbell(g, ci.clone(), cj.clone(), p) {
            out.push((format!("barbell via path {}", k + 1), b));
        }
    }
    Ok(out)
}

/// Enumeration limits for [`structural_checks`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralBudget {
    pub max_circuits: usize,
    pub negativeness: NegativenessBudget,
}

impl Default for StructuralBudget {
    fn default() -> Self {
        StructuralBudget {
            max_circuits: 50_000,
            negativeness: NegativenessBudget::default(),
        }
    }
}

/// Findings of [`structural_checks`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct StructuralReport {
    /// `3 g_s ≥ m + 6`; the conclusions are only guaranteed when this holds.
    pub applicable: bool,
    pub signed_girth: Option<usize>,
    pub circuits_checked: usize,
    /// Two vertex-disjoint circuits that both contain negative edges.
    pub disjoint_pair: Option<(Circuit, Circuit)>,
    pub trees_checked: usize,
    /// First cycle-tree shape violation, described.
    pub tree_violation: Option<String>,
    /// Why a check was skipped.
    pub skipped: Option<String>,
}

impl StructuralReport {
    pub fn holds(&self) -> bool {
        self.disjoint_pair.is_none() && self.tree_violation.is_none()
    }
}

/// On a minimum signature of cubic `g`, looks for two vertex-disjoint
/// circuits with negative edges, and checks that every cycle-tree extracted
/// from a BFS tree of the positive subgraph (over all negative edges, and
/// over all but each one) has at most three leaf-cycles, at most one
/// non-leaf cycle, and only negative leaf-cycles when it has a non-leaf one.
pub fn structural_checks(g: &SignedGraph, budget: StructuralBudget) -> Result<StructuralReport> {
    if !g.is_cubic() {
        return Err(Error::Precondition("graph is not cubic".into()));
    }
    let summary = negativeness_with(g, budget.negativeness)?;
    let gm = summary.minimizing_switching.apply(g);
    let mut report = StructuralReport::default();
    let gs = crate::cycles::signed_girth(&gm);
    report.signed_girth = gs;
    report.applicable = gs.is_none_or(|gs| 3 * gs >= gm.edge_count() + 6);

    let adj = Adjacency::full(&gm);
    let circuits: Vec<Circuit> = circuits_in(&gm, &adj, gm.vertex_count() + 1)
        .into_iter()
        .filter(|c| c.has_negative_edge(&gm))
        .collect();
    if circuits.len() > budget.max_circuits {
        report.skipped = Some(format!(
            "{} circuits exceed the budget of {}",
            circuits.len(),
            budget.max_circuits
        ));
    } else {
        report.circuits_checked = circuits.len();
        let masks: Vec<FixedBitSet> = circuits
            .iter()
            .map(|c| {
                let mut s = FixedBitSet::with_capacity(gm.vertex_count());
                s.extend(c.vertices(&gm));
                s
            })
            .collect();
        'outer: for i in 0..circuits.len() {
            for j in i + 1..circuits.len() {
                if masks[i].is_disjoint(&masks[j]) {
                    report.disjoint_pair = Some((circuits[i].clone(), circuits[j].clone()));
                    break 'outer;
                }
            }
        }
    }

    let positive = gm.positive_edges();
    let excluded: Vec<Option<usize>> = std::iter::once(None)
        .chain(gm.negative_edges().into_iter().map(Some))
        .collect();
    for root in 0..gm.vertex_count() {
        let Some(tree) = bfs_spanning_tree(&gm, &positive, root) else {
            report.skipped = Some("positive subgraph does not span".into());
            break;
        };
        for &x in &excluded {
            let h = extract_cycle_tree(&gm, &tree, x)?;
            report.trees_checked += 1;
            let leaves = h.leaf_count();
            let non_leaf = h.cycles().len() - leaves;
            let positive_leaf = (0..h.cycles().len()).any(|i| h.is_leaf(i) && h.cycles()[i].is_positive());
            let problem = if leaves > 3 {
                Some(format!("{leaves} leaf-cycles"))
            } else if non_leaf > 1 {
                Some(format!("{non_leaf} non-leaf cycles"))
            } else if non_leaf == 1 && positive_leaf {
                Some("positive leaf-cycle next to a non-leaf cycle".into())
            } else {
                None
            };
            if let (Some(p), None) = (problem, &report.tree_violation) {
                let what = x.map_or("all negative edges".to_string(), |e| {
                    format!("all negative edges but {}", e + 1)
                });
                report.tree_violation = Some(format!("BFS tree from vertex {}, {what}: {p}", root + 1));
            }
        }
    }
    Ok(report)
}
