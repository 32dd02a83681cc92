//! Signed cycle-trees: connected subgraphs without degree-1 vertices whose
//! cycles are pairwise edge-disjoint, every cycle carrying a negative edge.
//!
//! Covers produced here are built recursively on edge sets of the host graph,
//! so every emitted circuit is a circuit of the host.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::connectivity::{bfs_spanning_tree, blocks_in, bridges_in, edge_components, Adjacency, UnionFind};
use crate::cycles::{
    classify_cycle, fundamental_cycles, symmetric_difference_cycles, Barbell, Circuit, CircuitFamily, Cycle,
};
use crate::error::{Error, Result};
use crate::graph::SignedGraph;

/// Block structure of a cactus given as an edge set of the host.
#[derive(Debug, Clone)]
struct Cactus {
    edges: Vec<usize>,
    adj: Adjacency,
    cycles: Vec<Cycle>,
    leaf: Vec<bool>,
    bridges: Vec<usize>,
}

impl Cactus {
    fn build(g: &SignedGraph, edges: &[usize]) -> Result<Cactus> {
        let mut edges = edges.to_vec();
        edges.sort_unstable();
        edges.dedup();
        if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::UnknownEdge(e));
        }
        let adj = Adjacency::new(g, edges.iter().copied());
        if edge_components(g, &edges).len() > 1 {
            return Err(Error::NotCycleTree("not connected".into()));
        }
        if let Some(v) = (0..g.vertex_count()).find(|&v| adj.degree(v) == 1) {
            return Err(Error::NotCycleTree(format!("vertex {} has degree 1", v + 1)));
        }
        let mut cycles = Vec::new();
        let mut bridges = Vec::new();
        for block in blocks_in(&adj) {
            if block.len() == 1 {
                bridges.push(block[0]);
            } else {
                let cycle =
                    classify_cycle(g, &block).map_err(|_| Error::NotCycleTree("two cycles share an edge".into()))?;
                cycles.push(cycle);
            }
        }
        cycles.sort();
        bridges.sort_unstable();
        let leaf = cycles
            .iter()
            .map(|c| c.vertices(g).iter().filter(|&&v| adj.degree(v) > 2).count() <= 1)
            .collect();
        Ok(Cactus {
            edges,
            adj,
            cycles,
            leaf,
            bridges,
        })
    }

    fn negative_cycles(&self) -> usize {
        self.cycles.iter().filter(|c| c.is_negative()).count()
    }
}

/// Repeatedly deletes edges at degree-1 vertices.
fn prune(g: &SignedGraph, edges: &[usize]) -> Vec<usize> {
    let mut degree = vec![0usize; g.vertex_count()];
    for &e in edges {
        degree[g.edge(e).u] += 1;
        degree[g.edge(e).v] += 1;
    }
    let mut alive: Vec<bool> = vec![true; edges.len()];
    loop {
        let mut changed = false;
        for (i, &e) in edges.iter().enumerate() {
            let edge = g.edge(e);
            if alive[i] && (degree[edge.u] == 1 || degree[edge.v] == 1) {
                alive[i] = false;
                degree[edge.u] -= 1;
                degree[edge.v] -= 1;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let mut out: Vec<usize> = edges.iter().zip(alive).filter(|(_, a)| *a).map(|(&e, _)| e).collect();
    out.sort_unstable();
    out
}

/// A validated signed cycle-tree inside its host graph.
#[derive(Debug, Clone)]
pub struct CycleTree<'g> {
    host: &'g SignedGraph,
    cactus: Cactus,
}

impl<'g> CycleTree<'g> {
    /// Validates `edges` as a signed cycle-tree of `host`. The empty edge set
    /// is the trivial cycle-tree.
    pub fn new(host: &'g SignedGraph, edges: &[usize]) -> Result<Self> {
        let cactus = Cactus::build(host, edges)?;
        if let Some(c) = cactus.cycles.iter().find(|c| c.negative_edge_count(host) == 0) {
            return Err(Error::NotCycleTree(format!(
                "cycle through edge {} has no negative edge",
                c.edges()[0] + 1
            )));
        }
        Ok(CycleTree { host, cactus })
    }

    pub fn host(&self) -> &'g SignedGraph {
        self.host
    }

    pub fn edges(&self) -> &[usize] {
        &self.cactus.edges
    }

    pub fn edge_count(&self) -> usize {
        self.cactus.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cactus.edges.is_empty()
    }

    /// Cycles sorted by edge set.
    pub fn cycles(&self) -> &[Cycle] {
        &self.cactus.cycles
    }

    pub fn is_leaf(&self, cycle: usize) -> bool {
        self.cactus.leaf[cycle]
    }

    pub fn leaf_flags(&self) -> &[bool] {
        &self.cactus.leaf
    }

    /// Edges on no cycle; these are exactly the cutedges of the cycle-tree.
    pub fn tree_edges(&self) -> &[usize] {
        &self.cactus.bridges
    }

    pub fn negative_cycle_count(&self) -> usize {
        self.cactus.negative_cycles()
    }

    pub fn leaf_count(&self) -> usize {
        self.cactus.leaf.iter().filter(|&&l| l).count()
    }

    /// Total length of the non-leaf cycles.
    pub fn non_leaf_length(&self) -> usize {
        self.cactus
            .cycles
            .iter()
            .zip(&self.cactus.leaf)
            .filter(|(_, &l)| !l)
            .map(|(c, _)| c.len())
            .sum()
    }
}

/// Builds the cycle-tree spanned by the fundamental cycles of the negative
/// edges (all but `excluded`) with respect to `tree`, a spanning tree of the
/// positive subgraph.
pub fn extract_cycle_tree<'g>(g: &'g SignedGraph, tree: &[usize], excluded: Option<usize>) -> Result<CycleTree<'g>> {
    if g.max_degree() > 3 {
        return Err(Error::Precondition(
            "cycle-tree extraction needs maximum degree 3".into(),
        ));
    }
    if let Some(&e) = tree.iter().find(|&&e| e < g.edge_count() && g.sign(e).is_negative()) {
        return Err(Error::Precondition(format!("tree edge {} is negative", e + 1)));
    }
    if let Some(x) = excluded {
        if x >= g.edge_count() {
            return Err(Error::UnknownEdge(x));
        }
        if g.sign(x).is_positive() {
            return Err(Error::Precondition(format!("excluded edge {} is positive", x + 1)));
        }
    }
    let negatives: Vec<usize> = g
        .negative_edges()
        .into_iter()
        .filter(|&e| Some(e) != excluded)
        .collect();
    let fundamentals = fundamental_cycles(g, tree, &negatives)?;
    if negatives.is_empty() {
        return CycleTree::new(g, &[]);
    }
    let sets: Vec<Vec<usize>> = fundamentals.iter().map(|c| c.edges().to_vec()).collect();
    let q: Vec<Cycle> = symmetric_difference_cycles(g, &sets)?
        .into_iter()
        .filter(|c| c.negative_edge_count(g) > 0)
        .collect();
    let in_q = g.edge_mask(q.iter().flat_map(|c| c.edges().iter().copied()));

    let mut h: Vec<usize> = (0..g.edge_count())
        .filter(|&e| in_q.contains(e) || tree.contains(&e))
        .collect();
    loop {
        h = prune(g, &h);
        let bridges = bridges_in(&Adjacency::new(g, h.iter().copied()));
        match h
            .iter()
            .position(|&e| !in_q.contains(e) && bridges.binary_search(&e).is_err())
        {
            Some(i) => {
                h.remove(i);
            }
            None => break,
        }
    }

    let ct = CycleTree::new(g, &h)?;
    if ct.cycles() != q.as_slice() {
        return Err(Error::Internal("extracted cycle-tree has unexpected cycles".into()));
    }
    let negatives_h: Vec<usize> = ct
        .edges()
        .iter()
        .copied()
        .filter(|&e| g.sign(e).is_negative())
        .collect();
    if negatives_h != negatives {
        return Err(Error::Internal("extracted cycle-tree lost a negative edge".into()));
    }
    Ok(ct)
}

/// Spanning trees tried by [`minimize_cycle_count`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreePortfolio {
    /// Enumerate every spanning tree when there are at most this many.
    pub exhaustive_cap: usize,
    /// Random spanning trees added to the BFS trees otherwise.
    pub random_trees: usize,
    pub seed: u64,
}

impl Default for TreePortfolio {
    fn default() -> Self {
        TreePortfolio {
            exhaustive_cap: 4096,
            random_trees: 64,
            seed: 0,
        }
    }
}

pub fn minimize_cycle_count(g: &SignedGraph, excluded: Option<usize>) -> Result<CycleTree<'_>> {
    minimize_cycle_count_with(g, excluded, TreePortfolio::default())
}

/// Cycle-tree with the fewest cycles (then fewest edges) over a portfolio of
/// spanning trees of the positive subgraph.
pub fn minimize_cycle_count_with(
    g: &SignedGraph,
    excluded: Option<usize>,
    portfolio: TreePortfolio,
) -> Result<CycleTree<'_>> {
    let positive = g.positive_edges();
    let trees = match all_spanning_trees(g, &positive, portfolio.exhaustive_cap) {
        Some(all) => all,
        None => sampled_spanning_trees(g, &positive, portfolio),
    };
    if trees.is_empty() {
        return Err(Error::Precondition(
            "positive subgraph is not connected and spanning".into(),
        ));
    }
    let results: Vec<Result<(usize, usize, usize)>> = trees
        .par_iter()
        .enumerate()
        .map(|(i, t)| {
            let ct = extract_cycle_tree(g, t, excluded)?;
            Ok((ct.cycles().len(), ct.edge_count(), i))
        })
        .collect();
    let mut best: Option<(usize, usize, usize)> = None;
    for r in results {
        let key = r?;
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    let (_, _, i) = best.expect("nonempty portfolio");
    extract_cycle_tree(g, &trees[i], excluded)
}

/// Every spanning tree of the subgraph on `edges`, or `None` if there are
/// more than `cap` (or the subgraph is not connected and spanning, in which
/// case the result is `Some(empty)`).
pub(crate) fn all_spanning_trees(g: &SignedGraph, edges: &[usize], cap: usize) -> Option<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let spans = |chosen: &[usize], rest: &[usize]| {
        let mut uf = UnionFind::new(n);
        let mut parts = n;
        for &e in chosen.iter().chain(rest) {
            if uf.union(g.edge(e).u, g.edge(e).v) {
                parts -= 1;
            }
        }
        parts <= 1
    };
    if !spans(&[], edges) {
        return Some(Vec::new());
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();

    fn rec(
        g: &SignedGraph,
        edges: &[usize],
        i: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
        spans: &dyn Fn(&[usize], &[usize]) -> bool,
    ) -> bool {
        let n = g.vertex_count();
        if chosen.len() + 1 == n || n == 0 {
            out.push(chosen.clone());
            return out.len() <= cap;
        }
        if i == edges.len() {
            return true;
        }
        let e = edges[i];
        let mut uf = UnionFind::new(n);
        for &c in chosen.iter() {
            uf.union(g.edge(c).u, g.edge(c).v);
        }
        if uf.union(g.edge(e).u, g.edge(e).v) {
            chosen.push(e);
            let ok = rec(g, edges, i + 1, chosen, out, cap, spans);
            chosen.pop();
            if !ok {
                return false;
            }
        }
        if spans(chosen, &edges[i + 1..]) {
            return rec(g, edges, i + 1, chosen, out, cap, spans);
        }
        true
    }

    if rec(g, edges, 0, &mut chosen, &mut out, cap, &spans) {
        Some(out)
    } else {
        None
    }
}

/// BFS trees from every root plus random Kruskal trees, deduplicated.
fn sampled_spanning_trees(g: &SignedGraph, edges: &[usize], portfolio: TreePortfolio) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut trees = Vec::new();
    for root in 0..n {
        match bfs_spanning_tree(g, edges, root) {
            Some(tree) => trees.push(tree),
            None => return Vec::new(),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(portfolio.seed);
    for _ in 0..portfolio.random_trees {
        let mut order = edges.to_vec();
        order.shuffle(&mut rng);
        let mut uf = UnionFind::new(n);
        let mut tree: Vec<usize> = order
            .into_iter()
            .filter(|&e| uf.union(g.edge(e).u, g.edge(e).v))
            .collect();
        tree.sort_unstable();
        trees.push(tree);
    }
    trees.sort();
    trees.dedup();
    trees
}

/// Coverage of one cycle of a cycle-tree by a family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleCoverage {
    pub leaf: bool,
    /// Every edge of the cycle is covered.
    pub covered: bool,
    /// Largest number of members containing one edge of the cycle.
    pub max_edge_multiplicity: u32,
    /// Σ over members of |E(D) ∩ E(member)| divided by |E(D)|.
    pub times: Ratio<usize>,
}

/// Per-cycle coverage of `h`'s cycles by `fam`, in the order of `h.cycles()`.
pub fn cycle_coverage(h: &CycleTree<'_>, fam: &CircuitFamily) -> Vec<CycleCoverage> {
    let cov = fam.coverage(h.host.edge_count());
    h.cycles()
        .iter()
        .zip(h.leaf_flags())
        .map(|(c, &leaf)| {
            let total: usize = c.edges().iter().map(|&e| cov[e] as usize).sum();
            CycleCoverage {
                leaf,
                covered: c.edges().iter().all(|&e| cov[e] > 0),
                max_edge_multiplicity: c.edges().iter().map(|&e| cov[e]).max().unwrap_or(0),
                times: Ratio::new(total, c.len()),
            }
        })
        .collect()
}

/// Circuits covering every leaf-cycle exactly once and every other cycle at
/// most 3/2 times.
pub fn leaf_cycle_cover(h: &CycleTree<'_>) -> Result<CircuitFamily> {
    let neg = h.negative_cycle_count();
    if neg % 2 == 1 {
        return Err(Error::OddNegativeCycles(neg));
    }
    let mut out = Vec::new();
    leaf_cover_rec(h.host, h.edges(), &mut out)?;
    let fam = CircuitFamily::from(out);
    let limit = Ratio::new(3usize, 2);
    for (i, c) in cycle_coverage(h, &fam).into_iter().enumerate() {
        let ok = c.covered
            && if c.leaf {
                c.max_edge_multiplicity == 1
            } else {
                c.times <= limit
            };
        if !ok {
            return Err(Error::Internal(format!(
                "cycle {} of the cycle-tree covered {} times (leaf: {})",
                i + 1,
                c.times,
                c.leaf
            )));
        }
    }
    Ok(fam)
}

fn leaf_cover_rec(g: &SignedGraph, edges: &[usize], out: &mut Vec<Circuit>) -> Result<()> {
    if edges.is_empty() {
        return Ok(());
    }
    let ct = Cactus::build(g, edges)?;
    if ct.cycles.is_empty() {
        return Ok(());
    }
    let neg = ct.negative_cycles();
    if neg % 2 == 1 {
        return Err(Error::Internal(format!("subproblem with {neg} negative cycles")));
    }

    if let Some((a, b)) = even_split(g, &ct) {
        leaf_cover_rec(g, &a, out)?;
        return leaf_cover_rec(g, &b, out);
    }

    if let Some(c) = ct.cycles.iter().find(|c| c.is_positive()) {
        let comps = attached_components(g, &ct, c)?;
        let gaps = gaps_along(c, g, &comps);
        let two_k = comps.len();
        if two_k % 2 == 1 {
            return Err(Error::Internal(
                "odd number of components around a positive cycle".into(),
            ));
        }
        if two_k > 0 {
            let offset = cheaper_pairing(&gaps, &[0, 1], two_k / 2);
            for p in 0..two_k / 2 {
                let i = (offset + 2 * p) % two_k;
                let j = (i + 1) % two_k;
                let mut part = comps[i].edges.clone();
                part.extend(&gaps[i]);
                part.extend(&comps[j].edges);
                part.sort_unstable();
                leaf_cover_rec(g, &part, out)?;
            }
        }
        out.push(Circuit::positive(c.clone())?);
        return Ok(());
    }

    if neg == 2 {
        out.push(Circuit::Barbell(barbell_of(g, &ct)?));
        return Ok(());
    }

    // a negative cycle whose removal leaves the most components
    let mut best: Option<(usize, Vec<Attached>)> = None;
    for (i, d) in ct.cycles.iter().enumerate() {
        let comps = attached_components(g, &ct, d)?;
        let better = match &best {
            None => true,
            Some((j, b)) => comps.len() > b.len() || (comps.len() == b.len() && d.len() < ct.cycles[*j].len()),
        };
        if better {
            best = Some((i, comps));
        }
    }
    let (di, comps) = best.expect("a cycle exists");
    let d = &ct.cycles[di];
    if comps.len() < 3 || comps.len() % 2 == 0 {
        return Err(Error::Internal(format!(
            "negative cycle splits the cycle-tree into {} components",
            comps.len()
        )));
    }
    let gaps = gaps_along(d, g, &comps);
    let n_comp = comps.len();
    let k = n_comp / 2;
    let starts: Vec<usize> = (0..n_comp).collect();
    // Q_0 = comps[j]; the pairs then start right after it
    let j = cheaper_pairing(&gaps, &starts.iter().map(|&j| (j + 1) % n_comp).collect::<Vec<_>>(), k);
    let first = j; // index into gaps of the first paired segment
    let q0 = (first + n_comp - 1) % n_comp;
    let mut h0 = comps[q0].edges.clone();
    h0.extend(d.edges());
    h0.sort_unstable();
    leaf_cover_rec(g, &h0, out)?;
    for p in 0..k {
        let a = (first + 2 * p) % n_comp;
        let b = (a + 1) % n_comp;
        let mut part = comps[a].edges.clone();
        part.extend(&gaps[a]);
        part.extend(&comps[b].edges);
        part.sort_unstable();
        leaf_cover_rec(g, &part, out)?;
    }
    Ok(())
}

/// A component of `H \ E(D)` together with its attachment position on `D`.
#[derive(Debug, Clone)]
struct Attached {
    edges: Vec<usize>,
    position: usize,
}

/// Nontrivial components of `H \ E(d)` ordered along `d.walk()`.
fn attached_components(g: &SignedGraph, ct: &Cactus, d: &Cycle) -> Result<Vec<Attached>> {
    let rest: Vec<usize> = ct.edges.iter().copied().filter(|&e| !d.contains(e)).collect();
    let walk = d.walk(g);
    let mut out = Vec::new();
    for comp in edge_components(g, &rest) {
        let vs = g.vertices_of(&comp);
        let at: Vec<usize> = walk
            .iter()
            .enumerate()
            .filter(|(_, (v, _))| vs.binary_search(v).is_ok())
            .map(|(i, _)| i)
            .collect();
        if at.len() != 1 {
            return Err(Error::Internal("component meets a cycle in several vertices".into()));
        }
        out.push(Attached {
            edges: comp,
            position: at[0],
        });
    }
    out.sort_by_key(|a| (a.position, a.edges[0]));
    Ok(out)
}

/// `gaps[i]`: edges of `d` from component `i` forward to component `i + 1`.
fn gaps_along(d: &Cycle, g: &SignedGraph, comps: &[Attached]) -> Vec<Vec<usize>> {
    let walk = d.walk(g);
    let len = walk.len();
    (0..comps.len())
        .map(|i| {
            let from = comps[i].position;
            let to = comps[(i + 1) % comps.len()].position;
            let steps = if comps.len() == 1 { len } else { (to + len - from) % len };
            let mut seg: Vec<usize> = (0..steps).map(|s| walk[(from + s) % len].1).collect();
            seg.sort_unstable();
            seg
        })
        .collect()
}

/// Among candidate starting gaps, the one whose pairing (gaps start, start+2,
/// ..., `pairs` of them) has the fewest edges; ties go to the lexicographically
/// smaller edge multiset, then the earlier candidate.
fn cheaper_pairing(gaps: &[Vec<usize>], starts: &[usize], pairs: usize) -> usize {
    let key = |s: usize| {
        let mut all: Vec<usize> = (0..pairs)
            .flat_map(|p| gaps[(s + 2 * p) % gaps.len()].iter().copied())
            .collect();
        all.sort_unstable();
        (all.len(), all)
    };
    *starts.iter().min_by_key(|&&s| key(s)).expect("at least one candidate")
}

/// A cutvertex splitting the cycle-tree into two parts with an even number of
/// negative cycles each, as pruned edge sets.
fn even_split(g: &SignedGraph, ct: &Cactus) -> Option<(Vec<usize>, Vec<usize>)> {
    let n = g.vertex_count();
    for x in 0..n {
        if ct.adj.degree(x) < 2 {
            continue;
        }
        let mut uf = UnionFind::new(n);
        for &e in &ct.edges {
            let edge = g.edge(e);
            if edge.u != x && edge.v != x {
                uf.union(edge.u, edge.v);
            }
        }
        let mut branch_of = |e: usize| {
            let edge = g.edge(e);
            let y = if edge.u == x { edge.v } else { edge.u };
            uf.find(y)
        };
        let mut roots: Vec<usize> = Vec::new();
        let mut edge_branch = Vec::with_capacity(ct.edges.len());
        for &e in &ct.edges {
            let r = branch_of(e);
            if !roots.contains(&r) {
                roots.push(r);
            }
            edge_branch.push(roots.iter().position(|&q| q == r).unwrap());
        }
        if roots.len() < 2 {
            continue;
        }
        let mut neg = vec![0usize; roots.len()];
        for c in ct.cycles.iter().filter(|c| c.is_negative()) {
            let i = ct.edges.binary_search(&c.edges()[0]).unwrap();
            neg[edge_branch[i]] += 1;
        }
        let chosen: Vec<usize> = if let Some(b) = (0..roots.len()).find(|&b| neg[b].is_multiple_of(2)) {
            vec![b]
        } else if roots.len() >= 3 {
            (0..roots.len()).filter(|&b| neg[b] % 2 == 1).take(2).collect()
        } else {
            continue;
        };
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (&e, br) in ct.edges.iter().zip(&edge_branch) {
            if chosen.contains(br) {
                a.push(e);
            } else {
                b.push(e);
            }
        }
        return Some((prune(g, &a), prune(g, &b)));
    }
    None
}

/// The barbell formed by a cycle-tree with exactly two cycles, both negative.
fn barbell_of(g: &SignedGraph, ct: &Cactus) -> Result<Barbell> {
    if ct.cycles.len() != 2 {
        return Err(Error::Internal("barbell case with extra cycles".into()));
    }
    let (a, b) = (&ct.cycles[0], &ct.cycles[1]);
    let path = tree_path(g, &ct.bridges, &a.vertices(g), &b.vertices(g))
        .ok_or_else(|| Error::Internal("cycles of a barbell are not joined".into()))?;
    Barbell::new(g, a.clone(), b.clone(), path).map_err(|e| Error::Internal(e.to_string()))
}

/// Shortest edge sequence over `edges` from the vertex set `from` to `to`.
fn tree_path(g: &SignedGraph, edges: &[usize], from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
    if from.iter().any(|v| to.binary_search(v).is_ok()) {
        return Some(Vec::new());
    }
    let n = g.vertex_count();
    let adj = Adjacency::new(g, edges.iter().copied());
    let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    for &v in from {
        seen[v] = true;
        queue.push_back(v);
    }
    while let Some(x) = queue.pop_front() {
        if to.binary_search(&x).is_ok() {
            let mut path = Vec::new();
            let mut cur = x;
            while let Some((prev, e)) = via[cur] {
                path.push(e);
                cur = prev;
            }
            path.reverse();
            return Some(path);
        }
        for &(y, e) in &adj.adj[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, e));
                queue.push_back(y);
            }
        }
    }
    None
}

/// Leaf-cycles in boundary-walk order with the segments joining them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryWalk {
    /// Indices into `CycleTree::cycles()`.
    pub leaf_cycles: Vec<usize>,
    /// `segments[i]` joins leaf `i` to leaf `i + 1` (cyclically), as an edge
    /// sequence starting on leaf `i`.
    pub segments: Vec<Vec<usize>>,
}

pub fn boundary_walk_order(h: &CycleTree<'_>) -> Result<BoundaryWalk> {
    boundary_walk(h.host, &h.cactus)
}

fn boundary_walk(g: &SignedGraph, ct: &Cactus) -> Result<BoundaryWalk> {
    let leaves: Vec<usize> = (0..ct.cycles.len()).filter(|&i| ct.leaf[i]).collect();
    if leaves.iter().any(|&i| ct.cycles[i].is_positive()) {
        return Err(Error::Precondition(
            "boundary walk needs all leaf-cycles negative".into(),
        ));
    }
    if leaves.len() < 2 {
        return Err(Error::Precondition(format!(
            "boundary walk needs at least two leaf-cycles, found {}",
            leaves.len()
        )));
    }
    let n = g.vertex_count();
    // blocks as (edges) plus per-vertex list of incident block ids
    let mut blocks: Vec<Block> = ct
        .cycles
        .iter()
        .enumerate()
        .map(|(i, c)| Block::Cycle(i, c.edges()[0]))
        .chain(ct.bridges.iter().map(|&e| Block::Bridge(e)))
        .collect();
    blocks.sort_by_key(Block::min_edge);
    let mut at: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (b, block) in blocks.iter().enumerate() {
        let vs = match block {
            Block::Cycle(i, _) => ct.cycles[*i].vertices(g),
            Block::Bridge(e) => {
                let mut v = vec![g.edge(*e).u, g.edge(*e).v];
                v.sort_unstable();
                v
            }
        };
        for v in vs {
            at[v].push(b);
        }
    }
    let root = (0..n)
        .find(|&v| ct.adj.degree(v) >= 3)
        .ok_or_else(|| Error::Internal("cycle-tree with two leaf-cycles has no branching vertex".into()))?;

    // directed traversal: (edge, from, to)
    let mut walk: Vec<(usize, usize, usize)> = Vec::new();
    visit(g, ct, &blocks, &at, root, None, &mut walk);

    let cycle_of_edge = |e: usize| ct.cycles.iter().position(|c| c.contains(e));
    let leaf_of = |e: usize| cycle_of_edge(e).filter(|&i| ct.leaf[i]);
    // rotate so the walk starts at the beginning of a leaf run
    let len = walk.len();
    let start = (0..len)
        .find(|&i| leaf_of(walk[i].0).is_some() && leaf_of(walk[(i + len - 1) % len].0) != leaf_of(walk[i].0))
        .ok_or_else(|| Error::Internal("no leaf run in boundary walk".into()))?;
    walk.rotate_left(start);

    let mut order = Vec::new();
    let mut segments: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < len {
        let leaf = leaf_of(walk[i].0).expect("walk positioned at a leaf run");
        if order.contains(&leaf) {
            return Err(Error::Internal("leaf-cycle split across the boundary walk".into()));
        }
        order.push(leaf);
        while i < len && leaf_of(walk[i].0) == Some(leaf) {
            i += 1;
        }
        let mut seg = Vec::new();
        while i < len && leaf_of(walk[i].0).is_none() {
            seg.push(walk[i].0);
            i += 1;
        }
        segments.push(seg);
    }
    if order.len() != leaves.len() {
        return Err(Error::Internal("boundary walk missed a leaf-cycle".into()));
    }
    Ok(BoundaryWalk {
        leaf_cycles: order,
        segments,
    })
}

#[derive(Debug, Clone, Copy)]
enum Block {
    /// cycle index, smallest edge
    Cycle(usize, usize),
    Bridge(usize),
}

impl Block {
    fn min_edge(&self) -> usize {
        match *self {
            Block::Cycle(_, e) | Block::Bridge(e) => e,
        }
    }
}

fn visit(
    g: &SignedGraph,
    ct: &Cactus,
    blocks: &[Block],
    at: &[Vec<usize>],
    x: usize,
    from: Option<usize>,
    walk: &mut Vec<(usize, usize, usize)>,
) {
    for &b in &at[x] {
        if Some(b) == from {
            continue;
        }
        match blocks[b] {
            Block::Bridge(e) => {
                let y = g.edge(e).other(x);
                walk.push((e, x, y));
                visit(g, ct, blocks, at, y, Some(b), walk);
                walk.push((e, y, x));
            }
            Block::Cycle(i, _) => {
                let c = &ct.cycles[i];
                let first = c
                    .edges()
                    .iter()
                    .copied()
                    .find(|&e| g.edge(e).touches(x))
                    .expect("cycle passes through x");
                let steps = c.walk_from(g, x, Some(first));
                for (k, &(v, e)) in steps.iter().enumerate() {
                    let w = g.edge(e).other(v);
                    walk.push((e, v, w));
                    if k + 1 < steps.len() {
                        visit(g, ct, blocks, at, w, Some(b), walk);
                    }
                }
            }
        }
    }
}

/// Circuits covering every cycle of `h` with total length at most
/// `4/3 |E(h)|`: the shorter of the leaf-to-leaf barbell chain and the
/// [`leaf_cycle_cover`] family, after stripping positive leaf-cycles.
pub fn cycle_tree_cover(h: &CycleTree<'_>) -> Result<CircuitFamily> {
    let neg = h.negative_cycle_count();
    if neg % 2 == 1 {
        return Err(Error::OddNegativeCycles(neg));
    }
    let mut out = Vec::new();
    tree_cover_rec(h.host, h.edges(), &mut out)?;
    let fam = CircuitFamily::from(out);
    if 3 * fam.length() > 4 * h.edge_count() {
        return Err(Error::BoundViolation(format!(
            "cycle-tree cover of length {} exceeds 4/3 of {} edges",
            fam.length(),
            h.edge_count()
        )));
    }
    let cov = fam.coverage(h.host.edge_count());
    if let Some(c) = h.cycles().iter().find(|c| c.edges().iter().any(|&e| cov[e] == 0)) {
        return Err(Error::Internal(format!(
            "cycle through edge {} left uncovered",
            c.edges()[0] + 1
        )));
    }
    Ok(fam)
}

fn tree_cover_rec(g: &SignedGraph, edges: &[usize], out: &mut Vec<Circuit>) -> Result<()> {
    if edges.is_empty() {
        return Ok(());
    }
    let ct = Cactus::build(g, edges)?;
    if ct.cycles.is_empty() {
        return Ok(());
    }
    if let Some(i) = (0..ct.cycles.len()).find(|&i| ct.leaf[i] && ct.cycles[i].is_positive()) {
        let c = &ct.cycles[i];
        let rest: Vec<usize> = ct.edges.iter().copied().filter(|&e| !c.contains(e)).collect();
        tree_cover_rec(g, &prune(g, &rest), out)?;
        out.push(Circuit::positive(c.clone())?);
        return Ok(());
    }

    let chain = barbell_chain(g, &ct)?;
    let mut lemma = Vec::new();
    leaf_cover_rec(g, &ct.edges, &mut lemma)?;
    let len = |f: &[Circuit]| f.iter().map(Circuit::len).sum::<usize>();
    let non_leaf: usize = ct
        .cycles
        .iter()
        .zip(&ct.leaf)
        .filter(|(_, &l)| !l)
        .map(|(c, _)| c.len())
        .sum();
    let (l1, l2, m) = (len(&chain), len(&lemma), ct.edges.len());
    if l1 != 2 * m - non_leaf {
        return Err(Error::Internal(format!(
            "barbell chain has length {l1}, expected {}",
            2 * m - non_leaf
        )));
    }
    if 2 * l2 > 2 * m + non_leaf {
        return Err(Error::BoundViolation(format!(
            "leaf-cycle cover of length {l2} exceeds |E(H)| + l/2 = {m} + {non_leaf}/2"
        )));
    }
    out.extend(if l1 < l2 { chain } else { lemma });
    Ok(())
}

/// Barbells joining consecutive leaf-cycles along the boundary walk.
fn barbell_chain(g: &SignedGraph, ct: &Cactus) -> Result<Vec<Circuit>> {
    let walk = boundary_walk(g, ct)?;
    let k = walk.leaf_cycles.len();
    (0..k)
        .map(|i| {
            let a = ct.cycles[walk.leaf_cycles[i]].clone();
            let b = ct.cycles[walk.leaf_cycles[(i + 1) % k]].clone();
            Barbell::new(g, a, b, walk.segments[i].clone())
                .map(Circuit::Barbell)
                .map_err(|e| Error::Internal(format!("barbell chain: {e}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Sign::{Negative as N, Positive as P};

    /// Two negative triangles joined by one edge: |E| = 7.
    fn dumbbell() -> SignedGraph {
        SignedGraph::from_edges(
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
        .unwrap()
    }

    /// Central hexagon 0..6 with negative triangles hung at vertices 0, 2, 4
    /// and optionally a fourth at vertex 1.
    fn hexagon_with_triangles(hung: &[usize], central_negatives: usize) -> SignedGraph {
        let mut g = SignedGraph::new(6 + 2 * hung.len());
        for i in 0..6 {
            let s = if i < central_negatives { N } else { P };
            g.add_edge(i, (i + 1) % 6, s).unwrap();
        }
        for (t, &v) in hung.iter().enumerate() {
            let (a, b) = (6 + 2 * t, 7 + 2 * t);
            g.add_edge(v, a, N).unwrap();
            g.add_edge(a, b, P).unwrap();
            g.add_edge(b, v, P).unwrap();
        }
        g
    }

    fn all(g: &SignedGraph) -> Vec<usize> {
        (0..g.edge_count()).collect()
    }

    #[test]
    fn structure_of_a_dumbbell() {
        let g = dumbbell();
        let h = CycleTree::new(&g, &all(&g)).unwrap();
        assert_eq!(h.cycles().len(), 2);
        assert_eq!(h.leaf_flags(), &[true, true]);
        assert_eq!(h.tree_edges(), &[6]);
        assert_eq!(h.negative_cycle_count(), 2);
    }

    #[test]
    fn rejects_non_cycle_trees() {
        let g = dumbbell();
        assert!(matches!(CycleTree::new(&g, &[0, 1, 2, 6]), Err(Error::NotCycleTree(_))));
        // K4 has overlapping cycles
        let k4 =
            SignedGraph::from_edges(4, [(0, 1, N), (0, 2, P), (0, 3, P), (1, 2, P), (1, 3, P), (2, 3, N)]).unwrap();
        assert!(matches!(CycleTree::new(&k4, &all(&k4)), Err(Error::NotCycleTree(_))));
        // an all-positive cycle is not a signed cycle-tree
        assert!(matches!(
            CycleTree::new(&g.unsigned(), &[0, 1, 2]),
            Err(Error::NotCycleTree(_))
        ));
    }

    #[test]
    fn leaf_cover_of_a_barbell_is_the_barbell() {
        let g = dumbbell();
        let h = CycleTree::new(&g, &all(&g)).unwrap();
        let f = leaf_cycle_cover(&h).unwrap();
        assert_eq!(f.len(), 1);
        assert!(f.circuits()[0].is_barbell());
        assert_eq!(f.length(), 7);
    }

    #[test]
    fn single_positive_cycle() {
        let g = SignedGraph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6, if i < 2 { N } else { P }))).unwrap();
        let h = CycleTree::new(&g, &all(&g)).unwrap();
        let f = leaf_cycle_cover(&h).unwrap();
        assert_eq!(f.length(), 6);
        let f = cycle_tree_cover(&h).unwrap();
        assert_eq!(f.length(), 6);
    }

    #[test]
    fn odd_negative_count_is_rejected() {
        let g = dumbbell();
        let h = CycleTree::new(&g, &[0, 1, 2]).unwrap();
        assert_eq!(leaf_cycle_cover(&h).unwrap_err(), Error::OddNegativeCycles(1));
        assert_eq!(cycle_tree_cover(&h).unwrap_err(), Error::OddNegativeCycles(1));
    }

    #[test]
    fn four_leaves_around_a_positive_hexagon() {
        let g = hexagon_with_triangles(&[0, 1, 2, 4], 2);
        let h = CycleTree::new(&g, &all(&g)).unwrap();
        assert_eq!(h.leaf_count(), 4);
        let f = leaf_cycle_cover(&h).unwrap();
        for c in cycle_coverage(&h, &f) {
            assert!(c.covered);
            if c.leaf {
                assert_eq!(c.max_edge_multiplicity, 1);
            } else {
                assert!(c.times <= Ratio::new(3, 2));
            }
        }
        let f = cycle_tree_cover(&h).unwrap();
        assert!(3 * f.length() <= 4 * h.edge_count());
    }

    #[test]
    fn three_leaves_around_a_negative_hexagon() {
        let g = hexagon_with_triangles(&[0, 2, 4], 1);
        let h = CycleTree::new(&g, &all(&g)).unwrap();
        assert_eq!(h.negative_cycle_count(), 4);
        let f = leaf_cycle_cover(&h).unwrap();
        assert!(f.iter().all(Circuit::is_barbell));
        let walk = boundary_walk_order(&h).unwrap();
        assert_eq!(walk.leaf_cycles.len(), 3);
        // segments run along the hexagon: two edges each
        assert!(walk.segments.iter().all(|s| s.len() == 2));
        let f = cycle_tree_cover(&h).unwrap();
        assert!(3 * f.length() <= 4 * h.edge_count());
    }

    #[test]
    fn boundary_walk_of_a_barbell_uses_the_path_twice() {
        let g = dumbbell();
        let h = CycleTree::new(&g, &all(&g)).unwrap();
        let w = boundary_walk_order(&h).unwrap();
        assert_eq!(w.leaf_cycles.len(), 2);
        assert_eq!(w.segments, vec![vec![6], vec![6]]);
    }

    #[test]
    fn boundary_walk_needs_two_leaves() {
        let g = dumbbell();
        let h = CycleTree::new(&g, &[0, 1, 2]).unwrap();
        assert!(matches!(boundary_walk_order(&h), Err(Error::Precondition(_))));
    }

    #[test]
    fn prune_removes_pendant_paths() {
        let g = dumbbell();
        assert_eq!(prune(&g, &[0, 1, 2, 6]), vec![0, 1, 2]);
        assert!(prune(&g, &[6]).is_empty());
    }

    #[test]
    fn spanning_tree_enumeration_counts() {
        // K4 has 16 spanning trees, C5 has 5
        let k4 =
            SignedGraph::from_edges(4, [(0, 1, P), (0, 2, P), (0, 3, P), (1, 2, P), (1, 3, P), (2, 3, P)]).unwrap();
        assert_eq!(all_spanning_trees(&k4, &all(&k4), 100).unwrap().len(), 16);
        assert!(all_spanning_trees(&k4, &all(&k4), 10).is_none());
        let c5 = SignedGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5, P))).unwrap();
        assert_eq!(all_spanning_trees(&c5, &all(&c5), 100).unwrap().len(), 5);
    }

    #[test]
    fn extraction_on_k4() {
        let k4 =
            SignedGraph::from_edges(4, [(0, 1, N), (0, 2, P), (0, 3, P), (1, 2, P), (1, 3, P), (2, 3, N)]).unwrap();
        // tree {13, 14, 23}
        let h = extract_cycle_tree(&k4, &[1, 2, 3], None).unwrap();
        assert!(h.edges().contains(&0) && h.edges().contains(&5));
        assert_eq!(h.negative_cycle_count() % 2, 0);
        let h = extract_cycle_tree(&k4, &[1, 2, 3], Some(0)).unwrap();
        assert_eq!(h.cycles().len(), 1);
        assert!(h.cycles()[0].is_negative());
        assert!(!h.edges().contains(&0));

        let plain = k4.unsigned();
        let empty = extract_cycle_tree(&plain, &[1, 2, 3], None).unwrap();
        assert!(empty.is_empty());
    }
}
