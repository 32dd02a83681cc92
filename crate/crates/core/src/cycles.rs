//! Cycles, barbells and circuits of a signed graph.
//!
//! A circuit is either a positive cycle or a barbell: two edge-disjoint
//! negative cycles joined by a path that meets each cycle only at its end
//! (a path of length zero means the cycles share exactly one vertex).

use std::collections::VecDeque;

use fixedbitset::FixedBitSet;

use crate::connectivity::{edge_components, Adjacency, UnionFind};
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

/// A connected 2-regular edge set with the product of its edge signs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    edges: Vec<usize>,
    sign: Sign,
}

impl Cycle {
    /// `edges` must already be a sorted cycle of `g`.
    pub(crate) fn from_sorted_unchecked(g: &SignedGraph, edges: Vec<usize>) -> Cycle {
        debug_assert!(classify_cycle(g, &edges).is_ok(), "not a cycle: {edges:?}");
        let sign = Sign::product(edges.iter().map(|&e| g.sign(e)));
        Cycle { edges, sign }
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_positive(&self) -> bool {
        self.sign.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.sign.is_negative()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn negative_edge_count(&self, g: &SignedGraph) -> usize {
        self.edges.iter().filter(|&&e| g.sign(e).is_negative()).count()
    }

    pub fn vertices(&self, g: &SignedGraph) -> Vec<usize> {
        g.vertices_of(&self.edges)
    }

    /// Traversal `(vertex, edge to the next vertex)` starting at the smallest
    /// vertex and leaving it along its smaller incident cycle edge.
    pub fn walk(&self, g: &SignedGraph) -> Vec<(usize, usize)> {
        let start = g.edge(self.edges[0]).u.min(g.edge(self.edges[0]).v);
        let start = self
            .edges
            .iter()
            .flat_map(|&e| [g.edge(e).u, g.edge(e).v])
            .min()
            .unwrap_or(start);
        self.walk_from(g, start, None)
    }

    /// Traversal starting at `start`, leaving along `first` if given (it must
    /// be a cycle edge at `start`), otherwise along the smaller incident edge.
    pub fn walk_from(&self, g: &SignedGraph, start: usize, first: Option<usize>) -> Vec<(usize, usize)> {
        let at = |v: usize| -> [usize; 2] {
            let mut it = self.edges.iter().copied().filter(|&e| g.edge(e).touches(v));
            let a = it.next().expect("vertex on cycle");
            let b = it.next().expect("cycle vertex has degree 2");
            [a, b]
        };
        let mut out = Vec::with_capacity(self.edges.len());
        let mut v = start;
        let mut e = first.unwrap_or_else(|| at(start)[0]);
        for _ in 0..self.edges.len() {
            out.push((v, e));
            let next = g.edge(e).other(v);
            let [a, b] = at(next);
            e = if a == e { b } else { a };
            v = next;
        }
        debug_assert_eq!(v, start);
        out
    }
}

/// Validates `edge_set` as a cycle and computes its sign.
pub fn classify_cycle(g: &SignedGraph, edge_set: &[usize]) -> Result<Cycle> {
    if edge_set.is_empty() {
        return Err(Error::NotCycle("empty edge set".into()));
    }
    let mut edges = edge_set.to_vec();
    edges.sort_unstable();
    if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::NotCycle(format!("edge {} repeated", w[0] + 1)));
    }
    if let Some(&e) = edges.iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::UnknownEdge(e));
    }
    let mut degree = std::collections::BTreeMap::<usize, usize>::new();
    for &e in &edges {
        *degree.entry(g.edge(e).u).or_default() += 1;
        *degree.entry(g.edge(e).v).or_default() += 1;
    }
    if let Some((&v, &d)) = degree.iter().find(|(_, &d)| d != 2) {
        return Err(Error::NotCycle(format!("vertex {} has degree {d}", v + 1)));
    }
    if edge_components(g, &edges).len() != 1 {
        return Err(Error::NotCycle("edge set is disconnected".into()));
    }
    let sign = Sign::product(edges.iter().map(|&e| g.sign(e)));
    Ok(Cycle { edges, sign })
}

/// Two edge-disjoint negative cycles joined by a path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Barbell {
    cycle_a: Cycle,
    path: Vec<usize>,
    cycle_b: Cycle,
    edges: Vec<usize>,
}

impl Barbell {
    /// Validates the barbell conditions. `path` is an edge sequence starting
    /// at a vertex of `cycle_a` and ending at a vertex of `cycle_b`.
    pub fn new(g: &SignedGraph, cycle_a: Cycle, cycle_b: Cycle, path: Vec<usize>) -> Result<Barbell> {
        let bad = |msg: String| Err(Error::InvalidBarbell(msg));
        if cycle_a.is_positive() || cycle_b.is_positive() {
            return bad("both cycles must be negative".into());
        }
        if let Some(&e) = cycle_a.edges().iter().find(|&&e| cycle_b.contains(e)) {
            return bad(format!("cycles share edge {}", e + 1));
        }
        if let Some(&e) = path.iter().find(|&&e| e >= g.edge_count()) {
            return Err(Error::UnknownEdge(e));
        }
        if let Some(&e) = path.iter().find(|&&e| cycle_a.contains(e) || cycle_b.contains(e)) {
            return bad(format!("path edge {} lies on a cycle", e + 1));
        }
        let va = cycle_a.vertices(g);
        let vb = cycle_b.vertices(g);
        let in_a = |v: usize| va.binary_search(&v).is_ok();
        let in_b = |v: usize| vb.binary_search(&v).is_ok();
        let shared = va.iter().filter(|&&v| in_b(v)).count();
        if path.is_empty() {
            if shared != 1 {
                return bad(format!("cycles share {shared} vertices but the path is empty"));
            }
        } else {
            if shared != 0 {
                return bad("cycles joined by a path must be vertex-disjoint".into());
            }
            let first = g.edge(path[0]);
            let mut cur = match (in_a(first.u), in_a(first.v)) {
                (true, false) => first.u,
                (false, true) => first.v,
                _ => return bad("path must start with exactly one end on the first cycle".into()),
            };
            let mut seen = vec![cur];
            for (i, &e) in path.iter().enumerate() {
                let edge = g.edge(e);
                if !edge.touches(cur) {
                    return bad(format!("path edge {} does not continue the path", e + 1));
                }
                let next = edge.other(cur);
                if seen.contains(&next) {
                    return bad(format!("path revisits vertex {}", next + 1));
                }
                let last = i + 1 == path.len();
                if last {
                    if !in_b(next) {
                        return bad("path does not end on the second cycle".into());
                    }
                } else if in_a(next) || in_b(next) {
                    return bad(format!("path touches a cycle internally at vertex {}", next + 1));
                }
                seen.push(next);
                cur = next;
            }
        }
        let mut edges: Vec<usize> = cycle_a
            .edges()
            .iter()
            .chain(cycle_b.edges())
            .chain(&path)
            .copied()
            .collect();
        edges.sort_unstable();
        Ok(Barbell {
            cycle_a,
            path,
            cycle_b,
            edges,
        })
    }

    pub fn cycle_a(&self) -> &Cycle {
        &self.cycle_a
    }

    pub fn cycle_b(&self) -> &Cycle {
        &self.cycle_b
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Circuit {
    Positive(Cycle),
    Barbell(Barbell),
}

impl Circuit {
    pub fn positive(cycle: Cycle) -> Result<Circuit> {
        if cycle.is_negative() {
            return Err(Error::NotCycle("a negative cycle alone is not a circuit".into()));
        }
        Ok(Circuit::Positive(cycle))
    }

    /// All edges, sorted.
    pub fn edges(&self) -> &[usize] {
        match self {
            Circuit::Positive(c) => c.edges(),
            Circuit::Barbell(b) => b.edges(),
        }
    }

    pub fn len(&self) -> usize {
        self.edges().len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges().is_empty()
    }

    pub fn is_barbell(&self) -> bool {
        matches!(self, Circuit::Barbell(_))
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges().binary_search(&e).is_ok()
    }

    /// True when `e` lies on a cycle of the circuit (not on a barbell path).
    pub fn contains_in_cycle(&self, e: usize) -> bool {
        match self {
            Circuit::Positive(c) => c.contains(e),
            Circuit::Barbell(b) => b.cycle_a.contains(e) || b.cycle_b.contains(e),
        }
    }

    pub fn cycles(&self) -> Vec<&Cycle> {
        match self {
            Circuit::Positive(c) => vec![c],
            Circuit::Barbell(b) => vec![&b.cycle_a, &b.cycle_b],
        }
    }

    pub fn has_negative_edge(&self, g: &SignedGraph) -> bool {
        self.edges().iter().any(|&e| g.sign(e).is_negative())
    }

    pub fn vertices(&self, g: &SignedGraph) -> Vec<usize> {
        g.vertices_of(self.edges())
    }
}

/// Validated barbell circuit.
pub fn make_barbell(g: &SignedGraph, cycle_a: Cycle, cycle_b: Cycle, path: &[usize]) -> Result<Circuit> {
    Barbell::new(g, cycle_a, cycle_b, path.to_vec()).map(Circuit::Barbell)
}

/// An ordered multiset of circuits.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CircuitFamily {
    circuits: Vec<Circuit>,
}

impl CircuitFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Circuit) {
        self.circuits.push(c);
    }

    pub fn extend(&mut self, other: CircuitFamily) {
        self.circuits.extend(other.circuits);
    }

    pub fn circuits(&self) -> &[Circuit] {
        &self.circuits
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Circuit> {
        self.circuits.iter()
    }

    pub fn len(&self) -> usize {
        self.circuits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.circuits.is_empty()
    }

    /// Total length: the sum of member lengths.
    pub fn length(&self) -> usize {
        self.circuits.iter().map(Circuit::len).sum()
    }

    /// Number of members containing each edge of a graph with `m` edges.
    pub fn coverage(&self, m: usize) -> Vec<u32> {
        let mut cov = vec![0u32; m];
        for c in &self.circuits {
            for &e in c.edges() {
                cov[e] += 1;
            }
        }
        cov
    }

    pub fn into_vec(self) -> Vec<Circuit> {
        self.circuits
    }
}

impl From<Vec<Circuit>> for CircuitFamily {
    fn from(circuits: Vec<Circuit>) -> Self {
        CircuitFamily { circuits }
    }
}

impl FromIterator<Circuit> for CircuitFamily {
    fn from_iter<I: IntoIterator<Item = Circuit>>(iter: I) -> Self {
        CircuitFamily {
            circuits: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a CircuitFamily {
    type Item = &'a Circuit;
    type IntoIter = std::slice::Iter<'a, Circuit>;

    fn into_iter(self) -> Self::IntoIter {
        self.circuits.iter()
    }
}

/// Vertex (parent, parent edge, depth) arrays of a spanning tree rooted at 0.
struct RootedTree {
    parent: Vec<usize>,
    parent_edge: Vec<usize>,
    depth: Vec<usize>,
}

fn root_spanning_tree(g: &SignedGraph, tree: &[usize]) -> Result<RootedTree> {
    let n = g.vertex_count();
    if let Some(&e) = tree.iter().find(|&&e| e >= g.edge_count()) {
        return Err(Error::UnknownEdge(e));
    }
    if n > 0 && tree.len() != n - 1 {
        return Err(Error::NotSpanningTree(format!(
            "{} edges given, {} needed",
            tree.len(),
            n - 1
        )));
    }
    let mut uf = UnionFind::new(n);
    for &e in tree {
        if !uf.union(g.edge(e).u, g.edge(e).v) {
            return Err(Error::NotSpanningTree(format!("edge {} closes a cycle", e + 1)));
        }
    }
    let adj = Adjacency::new(g, tree.iter().copied());
    let mut parent = vec![usize::MAX; n];
    let mut parent_edge = vec![usize::MAX; n];
    let mut depth = vec![0; n];
    if n > 0 {
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    parent_edge[y] = e;
                    depth[y] = depth[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(RootedTree {
        parent,
        parent_edge,
        depth,
    })
}

/// For each chord, the unique cycle of `tree ∪ {chord}`.
pub fn fundamental_cycles(g: &SignedGraph, tree: &[usize], chords: &[usize]) -> Result<Vec<Cycle>> {
    let rooted = root_spanning_tree(g, tree)?;
    let in_tree = g.edge_mask(tree.iter().copied());
    chords
        .iter()
        .map(|&chord| {
            if chord >= g.edge_count() {
                return Err(Error::UnknownEdge(chord));
            }
            if in_tree.contains(chord) {
                return Err(Error::Precondition(format!("chord {} is a tree edge", chord + 1)));
            }
            let edge = g.edge(chord);
            let (mut a, mut b) = (edge.u, edge.v);
            let mut edges = vec![chord];
            while rooted.depth[a] > rooted.depth[b] {
                edges.push(rooted.parent_edge[a]);
                a = rooted.parent[a];
            }
            while rooted.depth[b] > rooted.depth[a] {
                edges.push(rooted.parent_edge[b]);
                b = rooted.parent[b];
            }
            while a != b {
                edges.push(rooted.parent_edge[a]);
                edges.push(rooted.parent_edge[b]);
                a = rooted.parent[a];
                b = rooted.parent[b];
            }
            edges.sort_unstable();
            Ok(Cycle::from_sorted_unchecked(g, edges))
        })
        .collect()
}

/// Symmetric difference of even edge sets, decomposed into its cycles.
///
/// Requires maximum degree at most 3, where an even subgraph is a disjoint
/// union of cycles.
pub fn symmetric_difference_cycles(g: &SignedGraph, sets: &[Vec<usize>]) -> Result<Vec<Cycle>> {
    if g.max_degree() > 3 {
        return Err(Error::Precondition(
            "symmetric difference decomposition needs maximum degree 3".into(),
        ));
    }
    let mut acc = FixedBitSet::with_capacity(g.edge_count());
    for set in sets {
        for &e in set {
            if e >= g.edge_count() {
                return Err(Error::UnknownEdge(e));
            }
            acc.toggle(e);
        }
    }
    let edges: Vec<usize> = acc.ones().collect();
    let mut degree = vec![0usize; g.vertex_count()];
    for &e in &edges {
        degree[g.edge(e).u] += 1;
        degree[g.edge(e).v] += 1;
    }
    if let Some(v) = (0..degree.len()).find(|&v| degree[v] % 2 == 1) {
        return Err(Error::OddDegree(v));
    }
    let mut cycles = edge_components(g, &edges)
        .into_iter()
        .map(|comp| classify_cycle(g, &comp))
        .collect::<Result<Vec<_>>>()?;
    cycles.sort();
    Ok(cycles)
}

/// All cycles of the subgraph in `adj` with at most `max_len` edges, each once.
pub(crate) fn cycles_in(g: &SignedGraph, adj: &Adjacency, max_len: usize) -> Vec<Cycle> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if max_len < 2 {
        return out;
    }
    let mut on_path = vec![false; n];
    let mut path: Vec<usize> = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn extend(
        g: &SignedGraph,
        adj: &Adjacency,
        s: usize,
        x: usize,
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        max_len: usize,
        out: &mut Vec<Cycle>,
    ) {
        for &(y, e) in &adj.adj[x] {
            if y == s {
                if path[0] < e {
                    let mut edges = path.clone();
                    edges.push(e);
                    edges.sort_unstable();
                    out.push(Cycle::from_sorted_unchecked(g, edges));
                }
            } else if y > s && !on_path[y] && path.len() + 1 < max_len {
                on_path[y] = true;
                path.push(e);
                extend(g, adj, s, y, path, on_path, max_len, out);
                path.pop();
                on_path[y] = false;
            }
        }
    }

    for s in 0..n {
        for &(y, e) in &adj.adj[s] {
            if y > s {
                on_path[y] = true;
                path.push(e);
                extend(g, adj, s, y, &mut path, &mut on_path, max_len, &mut out);
                path.pop();
                on_path[y] = false;
            }
        }
    }
    out.sort();
    out
}

/// All cycles of `g` with at most `max_len` edges, sorted by edge set.
pub fn enumerate_cycles(g: &SignedGraph, max_len: usize) -> Vec<Cycle> {
    cycles_in(g, &Adjacency::full(g), max_len)
}

/// Every barbell of total length at most `max_len` built on the given
/// negative cycles (all connecting paths, not only the shortest).
fn barbells_on(g: &SignedGraph, adj: &Adjacency, negatives: &[Cycle], max_len: usize, out: &mut Vec<Circuit>) {
    let n = g.vertex_count();
    let vsets: Vec<FixedBitSet> = negatives
        .iter()
        .map(|c| {
            let mut s = FixedBitSet::with_capacity(n);
            for v in c.vertices(g) {
                s.insert(v);
            }
            s
        })
        .collect();
    let esets: Vec<FixedBitSet> = negatives
        .iter()
        .map(|c| g.edge_mask(c.edges().iter().copied()))
        .collect();

    let mut visited = vec![false; n];
    for i in 0..negatives.len() {
        for j in i + 1..negatives.len() {
            let (a, b) = (&negatives[i], &negatives[j]);
            let base = a.len() + b.len();
            if base > max_len || !esets[i].is_disjoint(&esets[j]) {
                continue;
            }
            let shared = vsets[i].intersection_count(&vsets[j]);
            if shared == 1 {
                out.push(Circuit::Barbell(assemble(g, a, b, Vec::new())));
                continue;
            }
            if shared > 1 || base == max_len {
                continue;
            }
            let room = max_len - base;
            let mut path = Vec::new();
            for x in vsets[i].ones() {
                for &(y, e) in &adj.adj[x] {
                    if vsets[i].contains(y) {
                        continue;
                    }
                    path.push(e);
                    if vsets[j].contains(y) {
                        out.push(Circuit::Barbell(assemble(g, a, b, path.clone())));
                    } else if room > 1 {
                        visited[y] = true;
                        path_search(adj, y, &vsets[i], &vsets[j], room, &mut path, &mut visited, &mut |p| {
                            out.push(Circuit::Barbell(assemble(g, a, b, p.to_vec())));
                        });
                        visited[y] = false;
                    }
                    path.pop();
                }
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn path_search(
    adj: &Adjacency,
    x: usize,
    from: &FixedBitSet,
    to: &FixedBitSet,
    room: usize,
    path: &mut Vec<usize>,
    visited: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    for &(y, e) in &adj.adj[x] {
        if from.contains(y) || visited[y] {
            continue;
        }
        if to.contains(y) {
            path.push(e);
            emit(path);
            path.pop();
        } else if path.len() + 2 <= room {
            visited[y] = true;
            path.push(e);
            path_search(adj, y, from, to, room, path, visited, emit);
            path.pop();
            visited[y] = false;
        }
    }
}

fn assemble(g: &SignedGraph, a: &Cycle, b: &Cycle, path: Vec<usize>) -> Barbell {
    let barbell = Barbell::new(g, a.clone(), b.clone(), path);
    debug_assert!(barbell.is_ok(), "{barbell:?}");
    barbell.expect("enumerated barbell is valid")
}

/// Every circuit (positive cycle or barbell) with at most `max_len` edges,
/// each exactly once, sorted by edge-id set.
pub fn enumerate_circuits(g: &SignedGraph, max_len: usize) -> Vec<Circuit> {
    circuits_in(g, &Adjacency::full(g), max_len)
}

pub(crate) fn circuits_in(g: &SignedGraph, adj: &Adjacency, max_len: usize) -> Vec<Circuit> {
    let cycles = cycles_in(g, adj, max_len);
    let (positive, negative): (Vec<Cycle>, Vec<Cycle>) = cycles.into_iter().partition(Cycle::is_positive);
    let mut out: Vec<Circuit> = positive.into_iter().map(Circuit::Positive).collect();
    barbells_on(g, adj, &negative, max_len, &mut out);
    out.sort_by(|x, y| x.edges().cmp(y.edges()));
    out
}

/// Shortest circuits containing a negative edge, ordered lexicographically by
/// edge set, found by iterative deepening on the length cap. Empty when no
/// such circuit exists.
pub fn shortest_negative_circuits(g: &SignedGraph) -> Vec<Circuit> {
    if g.negative_count() == 0 {
        return Vec::new();
    }
    let adj = Adjacency::full(g);
    // a circuit has at most |V| + 1 edges
    let cap = (g.vertex_count() + 1).min(g.edge_count());
    for len in 2..=cap {
        let found: Vec<Circuit> = circuits_in(g, &adj, len)
            .into_iter()
            .filter(|c| c.len() == len && c.has_negative_edge(g))
            .collect();
        if !found.is_empty() {
            return found;
        }
    }
    Vec::new()
}

/// Length of a shortest circuit containing a negative edge; `None` stands for
/// infinity.
pub fn signed_girth(g: &SignedGraph) -> Option<usize> {
    shortest_negative_circuits(g).first().map(Circuit::len)
}

/// `k` vertex-disjoint paths from `sources` to `targets` whose interiors avoid
/// both sets, as edge sequences starting in `sources`.
pub fn disjoint_paths(g: &SignedGraph, sources: &[usize], targets: &[usize], k: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.vertex_count();
    let mut is_source = vec![false; n];
    let mut is_target = vec![false; n];
    for &v in sources {
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        is_source[v] = true;
    }
    for &v in targets {
        if v >= n {
            return Err(Error::UnknownVertex(v));
        }
        if is_source[v] {
            return Err(Error::Precondition("source and target sets must be disjoint".into()));
        }
        is_target[v] = true;
    }

    // node 2v = in(v), 2v+1 = out(v), 2n = source, 2n+1 = sink
    let (src, sink) = (2 * n, 2 * n + 1);
    let mut net = FlowNet::new(2 * n + 2);
    for v in 0..n {
        net.add_arc(2 * v, 2 * v + 1, None);
        if is_source[v] {
            net.add_arc(src, 2 * v, None);
        }
        if is_target[v] {
            net.add_arc(2 * v + 1, sink, None);
        }
    }
    for (e, edge) in g.edges().iter().enumerate() {
        for (x, y) in [(edge.u, edge.v), (edge.v, edge.u)] {
            if is_target[x] || is_source[y] {
                continue;
            }
            net.add_arc(2 * x + 1, 2 * y, Some(e));
        }
    }
    let mut found = 0;
    while found < k && net.augment(src, sink) {
        found += 1;
    }
    if found < k {
        return Err(Error::NoDisjointPaths { k });
    }

    let mut paths = Vec::with_capacity(k);
    for _ in 0..k {
        let mut path = Vec::new();
        let mut node = src;
        while node != sink {
            let arc = net.head[node]
                .iter()
                .copied()
                .find(|&a| net.arcs[a].flow > 0 && !net.arcs[a].reverse)
                .expect("flow decomposition");
            net.arcs[arc].flow -= 1;
            if let Some(e) = net.arcs[arc].edge {
                path.push(e);
            }
            node = net.arcs[arc].to;
        }
        paths.push(path);
    }
    Ok(paths)
}

#[derive(Debug, Clone)]
struct Arc {
    to: usize,
    cap: i32,
    flow: i32,
    edge: Option<usize>,
    reverse: bool,
}

/// Unit-capacity flow network with BFS augmentation.
struct FlowNet {
    arcs: Vec<Arc>,
    head: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            arcs: Vec::new(),
            head: vec![Vec::new(); nodes],
        }
    }

    fn add_arc(&mut self, from: usize, to: usize, edge: Option<usize>) {
        let id = self.arcs.len();
        self.arcs.push(Arc {
            to,
            cap: 1,
            flow: 0,
            edge,
            reverse: false,
        });
        self.arcs.push(Arc {
            to: from,
            cap: 0,
            flow: 0,
            edge,
            reverse: true,
        });
        self.head[from].push(id);
        self.head[to].push(id + 1);
    }

    fn augment(&mut self, src: usize, sink: usize) -> bool {
        let mut via = vec![usize::MAX; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[src] = true;
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            if x == sink {
                break;
            }
            for &a in &self.head[x] {
                let arc = &self.arcs[a];
                if arc.cap - arc.flow > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    via[arc.to] = a;
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[sink] {
            return false;
        }
        let mut node = sink;
        while node != src {
            let a = via[node];
            self.arcs[a].flow += 1;
            self.arcs[a ^ 1].flow -= 1;
            node = self.arcs[a ^ 1].to;
        }
        true
    }
}
