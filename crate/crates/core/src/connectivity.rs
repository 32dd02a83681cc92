//! Connectivity on edge-induced subgraphs: components, bridges, blocks.

use crate::graph::SignedGraph;

/// Adjacency lists `(neighbour, edge)` restricted to a subset of edges.
#[derive(Debug, Clone)]
pub(crate) struct Adjacency {
    pub adj: Vec<Vec<(usize, usize)>>,
}

impl Adjacency {
    pub fn new<I: IntoIterator<Item = usize>>(g: &SignedGraph, edges: I) -> Self {
        let mut adj = vec![Vec::new(); g.vertex_count()];
        for e in edges {
            let edge = g.edge(e);
            adj[edge.u].push((edge.v, e));
            adj[edge.v].push((edge.u, e));
        }
        for list in &mut adj {
            list.sort_unstable_by_key(|&(_, e)| e);
        }
        Adjacency { adj }
    }

    pub fn full(g: &SignedGraph) -> Self {
        Adjacency::new(g, 0..g.edge_count())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// Edge sets of the components of the subgraph formed by `edges`, each
/// sorted, ordered by smallest edge. Isolated vertices are not reported.
pub(crate) fn edge_components(g: &SignedGraph, edges: &[usize]) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(g.vertex_count());
    for &e in edges {
        let edge = g.edge(e);
        uf.union(edge.u, edge.v);
    }
    let mut by_root: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &e in edges {
        let root = uf.find(g.edge(e).u);
        by_root.entry(root).or_default().push(e);
    }
    let mut comps: Vec<Vec<usize>> = by_root
        .into_values()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    comps.sort_unstable_by_key(|c| c[0]);
    comps
}

pub(crate) fn bridges_in(adj: &Adjacency) -> Vec<usize> {
    let n = adj.adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut bridges = Vec::new();

    fn dfs(
        adj: &Adjacency,
        u: usize,
        parent_edge: usize,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        bridges: &mut Vec<usize>,
    ) {
        disc[u] = *time;
        low[u] = *time;
        *time += 1;
        for &(w, e) in &adj.adj[u] {
            if e == parent_edge {
                continue;
            }
            if disc[w] == usize::MAX {
                dfs(adj, w, e, disc, low, time, bridges);
                low[u] = low[u].min(low[w]);
                if low[w] > disc[u] {
                    bridges.push(e);
                }
            } else {
                low[u] = low[u].min(disc[w]);
            }
        }
    }

    for s in 0..n {
        if disc[s] == usize::MAX && !adj.adj[s].is_empty() {
            dfs(adj, s, usize::MAX, &mut disc, &mut low, &mut time, &mut bridges);
        }
    }
    bridges.sort_unstable();
    bridges
}

/// Biconnected blocks (as sorted edge sets) of the subgraph in `adj`.
pub(crate) fn blocks_in(adj: &Adjacency) -> Vec<Vec<usize>> {
    let n = adj.adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut time = 0usize;
    let mut stack: Vec<usize> = Vec::new();
    let mut blocks = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        adj: &Adjacency,
        u: usize,
        parent_edge: usize,
        disc: &mut [usize],
        low: &mut [usize],
        time: &mut usize,
        stack: &mut Vec<usize>,
        blocks: &mut Vec<Vec<usize>>,
    ) {
        disc[u] = *time;
        low[u] = *time;
        *time += 1;
        for &(w, e) in &adj.adj[u] {
            if e == parent_edge {
                continue;
            }
            if disc[w] == usize::MAX {
                stack.push(e);
                dfs(adj, w, e, disc, low, time, stack, blocks);
                low[u] = low[u].min(low[w]);
                if low[w] >= disc[u] {
                    let mut block = Vec::new();
                    while let Some(top) = stack.pop() {
                        block.push(top);
                        if top == e {
                            break;
                        }
                    }
                    block.sort_unstable();
                    blocks.push(block);
                }
            } else if disc[w] < disc[u] {
                stack.push(e);
                low[u] = low[u].min(disc[w]);
            }
        }
    }

    for s in 0..n {
        if disc[s] == usize::MAX && !adj.adj[s].is_empty() {
            dfs(
                adj,
                s,
                usize::MAX,
                &mut disc,
                &mut low,
                &mut time,
                &mut stack,
                &mut blocks,
            );
        }
    }
    blocks.sort_unstable_by_key(|b| b[0]);
    blocks
}

/// BFS spanning tree of the subgraph on `edges` rooted at `root`, exploring
/// neighbours in edge-id order; `None` when the subgraph does not span.
pub(crate) fn bfs_spanning_tree(g: &SignedGraph, edges: &[usize], root: usize) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n == 0 {
        return Some(Vec::new());
    }
    let adj = Adjacency::new(g, edges.iter().copied());
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut tree = Vec::with_capacity(n - 1);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(x) = queue.pop_front() {
        for &(y, e) in &adj.adj[x] {
            if !seen[y] {
                seen[y] = true;
                tree.push(e);
                queue.push_back(y);
            }
        }
    }
    if tree.len() + 1 != n {
        return None;
    }
    tree.sort_unstable();
    Some(tree)
}

/// Result of [`is_two_edge_connected`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeConnectivity {
    pub connected: bool,
    /// Every cutedge, sorted.
    pub bridges: Vec<usize>,
}

impl EdgeConnectivity {
    pub fn two_edge_connected(&self) -> bool {
        self.connected && self.bridges.is_empty()
    }
}

pub fn is_connected(g: &SignedGraph) -> bool {
    let n = g.vertex_count();
    if n <= 1 {
        return true;
    }
    let mut uf = UnionFind::new(n);
    let mut parts = n;
    for e in g.edges() {
        if uf.union(e.u, e.v) {
            parts -= 1;
        }
    }
    parts == 1
}

pub fn is_two_edge_connected(g: &SignedGraph) -> EdgeConnectivity {
    EdgeConnectivity {
        connected: is_connected(g),
        bridges: bridges_in(&Adjacency::full(g)),
    }
}

/// An edge-induced subgraph that keeps the host's vertex and edge indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph<'g> {
    host: &'g SignedGraph,
    edges: Vec<usize>,
}

impl<'g> Subgraph<'g> {
    pub fn new<I: IntoIterator<Item = usize>>(host: &'g SignedGraph, edges: I) -> Self {
        let mut edges: Vec<usize> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Subgraph { host, edges }
    }

    pub fn host(&self) -> &'g SignedGraph {
        self.host
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Connected and touching every vertex of the host.
    pub fn is_connected_spanning(&self) -> bool {
        let n = self.host.vertex_count();
        if n <= 1 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        let mut parts = n;
        for &e in &self.edges {
            let edge = self.host.edge(e);
            if uf.union(edge.u, edge.v) {
                parts -= 1;
            }
        }
        parts == 1
    }

    pub fn bridges(&self) -> Vec<usize> {
        bridges_in(&Adjacency::new(self.host, self.edges.iter().copied()))
    }

    /// Edge sets of the nontrivial components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        edge_components(self.host, &self.edges)
    }
}

/// The subgraph of positive edges on all vertices.
pub fn positive_subgraph(g: &SignedGraph) -> Subgraph<'_> {
    Subgraph::new(g, g.positive_edges())
}
