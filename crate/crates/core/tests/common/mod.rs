//! Independent reference checks used by the integration tests. Nothing here
//! calls into the library's algorithms; only the graph type is shared.

#![allow(dead_code)]

use sgcc_core::{CircuitFamily, SignedGraph};

/// Minimum number of negative edges over all switchings, by trying every
/// vertex subset that avoids vertex 0.
pub fn brute_negativeness(g: &SignedGraph) -> usize {
    let n = g.vertex_count();
    assert!(n <= 20, "brute force limited to 20 vertices");
    let mut best = usize::MAX;
    for mask in 0u32..1 << n.saturating_sub(1) {
        let side = |v: usize| v > 0 && mask >> (v - 1) & 1 == 1;
        let count = g
            .edges()
            .iter()
            .filter(|e| e.sign.is_negative() != (side(e.u) != side(e.v)))
            .count();
        best = best.min(count);
    }
    best
}

fn components(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    let mut touched = vec![false; n];
    for &(u, v) in edges {
        touched[u] = true;
        touched[v] = true;
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    (0..n).filter(|&v| touched[v] && find(&mut parent, v) == v).count()
}

/// Whether the edge set is connected and forms one cycle.
fn is_cycle(g: &SignedGraph, edges: &[usize]) -> bool {
    if edges.is_empty() {
        return false;
    }
    let mut deg = vec![0; g.vertex_count()];
    for &e in edges {
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    let pairs: Vec<(usize, usize)> = edges.iter().map(|&e| (g.edge(e).u, g.edge(e).v)).collect();
    deg.iter().all(|&d| d == 0 || d == 2) && components(g.vertex_count(), &pairs) == 1
}

fn negative_parity(g: &SignedGraph, edges: &[usize]) -> bool {
    edges.iter().filter(|&&e| g.sign(e).is_negative()).count() % 2 == 1
}

/// Whether `edges` (distinct ids) is a positive cycle or a barbell of `g`:
/// two edge-disjoint negative cycles sharing one vertex, or vertex-disjoint
/// and joined by a path meeting each only at its ends.
pub fn is_circuit(g: &SignedGraph, edges: &[usize]) -> bool {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != edges.len() || sorted.iter().any(|&e| e >= g.edge_count()) {
        return false;
    }
    if is_cycle(g, &sorted) {
        return !negative_parity(g, &sorted);
    }
    let pairs: Vec<(usize, usize)> = sorted.iter().map(|&e| (g.edge(e).u, g.edge(e).v)).collect();
    let n = g.vertex_count();
    if components(n, &pairs) != 1 {
        return false;
    }
    // bridges by deletion
    let bridges: Vec<usize> = (0..sorted.len())
        .filter(|&i| {
            let rest: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &p)| p)
                .collect();
            components(n, &rest) > 1
        })
        .collect();
    let rest: Vec<usize> = (0..sorted.len())
        .filter(|i| !bridges.contains(i))
        .map(|i| sorted[i])
        .collect();
    let mut deg = vec![0; n];
    for &e in &sorted {
        deg[g.edge(e).u] += 1;
        deg[g.edge(e).v] += 1;
    }
    // the bridges must form a single path whose inner vertices have degree 2
    let bridge_pairs: Vec<(usize, usize)> = bridges.iter().map(|&i| pairs[i]).collect();
    if !bridge_pairs.is_empty() && components(n, &bridge_pairs) != 1 {
        return false;
    }
    let mut bdeg = vec![0; n];
    for &(u, v) in &bridge_pairs {
        bdeg[u] += 1;
        bdeg[v] += 1;
    }
    if bdeg.iter().any(|&d| d > 2) {
        return false;
    }
    // split the non-bridge edges into connected pieces; each must be a
    // negative cycle and there must be exactly two
    let mut pieces: Vec<Vec<usize>> = Vec::new();
    let mut left = rest.clone();
    while let Some(seed) = left.pop() {
        let mut piece = vec![seed];
        let mut verts = vec![g.edge(seed).u, g.edge(seed).v];
        loop {
            let before = piece.len();
            left.retain(|&e| {
                let ed = g.edge(e);
                if verts.contains(&ed.u) || verts.contains(&ed.v) {
                    piece.push(e);
                    verts.push(ed.u);
                    verts.push(ed.v);
                    false
                } else {
                    true
                }
            });
            if piece.len() == before {
                break;
            }
        }
        pieces.push(piece);
    }
    if bridge_pairs.is_empty() {
        // tight barbell: one vertex of degree 4 where two cycles touch
        if deg.iter().filter(|&&d| d == 4).count() != 1 || deg.iter().any(|&d| d != 0 && d != 2 && d != 4) {
            return false;
        }
        let x = deg.iter().position(|&d| d == 4).unwrap();
        // walk the two cycles out of x
        let mut used = vec![false; sorted.len()];
        let mut cycles = Vec::new();
        for _ in 0..2 {
            let Some(start) = (0..sorted.len()).find(|&i| !used[i] && (pairs[i].0 == x || pairs[i].1 == x)) else {
                return false;
            };
            let mut cycle = vec![sorted[start]];
            used[start] = true;
            let mut at = if pairs[start].0 == x {
                pairs[start].1
            } else {
                pairs[start].0
            };
            while at != x {
                let Some(i) = (0..sorted.len()).find(|&i| !used[i] && (pairs[i].0 == at || pairs[i].1 == at)) else {
                    return false;
                };
                used[i] = true;
                cycle.push(sorted[i]);
                at = if pairs[i].0 == at { pairs[i].1 } else { pairs[i].0 };
            }
            cycles.push(cycle);
        }
        return used.iter().all(|&u| u) && cycles.iter().all(|c| is_cycle(g, c) && negative_parity(g, c));
    }
    if pieces.len() != 2 || !pieces.iter().all(|p| is_cycle(g, p) && negative_parity(g, p)) {
        return false;
    }
    // path ends are exactly one vertex on each cycle; inner vertices avoid both
    let on = |p: &Vec<usize>, v: usize| p.iter().any(|&e| g.edge(e).touches(v));
    let ends: Vec<usize> = (0..n).filter(|&v| bdeg[v] == 1).collect();
    if ends.len() != 2 {
        return false;
    }
    let inner_ok = (0..n)
        .filter(|&v| bdeg[v] == 2)
        .all(|v| !on(&pieces[0], v) && !on(&pieces[1], v));
    let ends_ok =
        (on(&pieces[0], ends[0]) && on(&pieces[1], ends[1])) || (on(&pieces[0], ends[1]) && on(&pieces[1], ends[0]));
    let disjoint = (0..n).all(|v| !(on(&pieces[0], v) && on(&pieces[1], v)));
    inner_ok && ends_ok && disjoint
}

/// Per-edge multiplicity of a family, counted directly.
pub fn coverage(g: &SignedGraph, fam: &CircuitFamily) -> Vec<u32> {
    let mut c = vec![0u32; g.edge_count()];
    for member in fam {
        for &e in member.edges() {
            c[e] += 1;
        }
    }
    c
}

/// Confirms that every member is a circuit and every edge is covered.
pub fn check_cover(g: &SignedGraph, fam: &CircuitFamily) -> Result<usize, String> {
    for (i, c) in fam.iter().enumerate() {
        if !is_circuit(g, c.edges()) {
            return Err(format!("member {i} is not a circuit: {:?}", c.edges()));
        }
    }
    let cov = coverage(g, fam);
    if let Some(e) = cov.iter().position(|&c| c == 0) {
        return Err(format!("edge {} uncovered", e + 1));
    }
    Ok(fam.iter().map(|c| c.edges().len()).sum())
}

/// Every circuit of a small graph, by testing every edge subset.
pub fn brute_circuits(g: &SignedGraph) -> Vec<Vec<usize>> {
    let m = g.edge_count();
    assert!(m <= 15, "subset enumeration limited to 15 edges");
    (1u32..1 << m)
        .map(|mask| (0..m).filter(|&e| mask >> e & 1 == 1).collect::<Vec<_>>())
        .filter(|s| is_circuit(g, s))
        .collect()
}

/// Shortest circuit cover by subset search over the brute-force circuit list.
pub fn brute_scc(g: &SignedGraph) -> Option<usize> {
    let circuits = brute_circuits(g);
    let m = g.edge_count();
    let full = (1u64 << m) - 1;
    let masks: Vec<(u64, usize)> = circuits
        .iter()
        .map(|c| (c.iter().fold(0u64, |a, &e| a | 1 << e), c.len()))
        .collect();
    // dynamic programme over covered-edge masks
    let mut best = vec![usize::MAX; 1 << m];
    best[0] = 0;
    for s in 0..=full {
        let cur = best[s as usize];
        if cur == usize::MAX {
            continue;
        }
        for &(c, len) in &masks {
            let t = (s | c) as usize;
            if t as u64 != s && cur + len < best[t] {
                best[t] = cur + len;
            }
        }
    }
    (best[full as usize] != usize::MAX).then(|| best[full as usize])
}
