//! Seeded generators for test corpora and fixtures.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::is_two_edge_connected;
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedGraph};

fn normalized(n: usize, mut pairs: Vec<(usize, usize)>, signs: Option<&[Sign]>) -> SignedGraph {
    for p in &mut pairs {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    pairs.sort_unstable();
    let signs = signs
        .map(<[Sign]>::to_vec)
        .unwrap_or_else(|| vec![Sign::Positive; pairs.len()]);
    SignedGraph::from_edges(n, pairs.into_iter().zip(signs).map(|((u, v), s)| (u, v, s))).expect("valid edges")
}

pub fn k4() -> SignedGraph {
    normalized(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], None)
}

/// Prism over a `k`-cycle: `2k` vertices, `k ≥ 3`.
pub fn prism(k: usize) -> SignedGraph {
    let mut pairs = Vec::new();
    for i in 0..k {
        pairs.push((i, (i + 1) % k));
        pairs.push((k + i, k + (i + 1) % k));
        pairs.push((i, k + i));
    }
    normalized(2 * k, pairs, None)
}

pub fn petersen() -> SignedGraph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((5 + i, 5 + (i + 2) % 5));
    }
    normalized(10, pairs, None)
}

/// Random simple 2-edge-connected cubic graph on `n` vertices: K4 or a prism
/// scrambled by `20 m` double-edge swaps, redrawn until 2-edge-connected.
pub fn random_cubic<R: Rng>(n: usize, rng: &mut R) -> Result<SignedGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "cubic graphs need an even vertex count of at least 4, got {n}"
        )));
    }
    let base = if n == 4 { k4() } else { prism(n / 2) };
    let start: Vec<(usize, usize)> = base.edges().iter().map(|e| (e.u, e.v)).collect();
    loop {
        let mut pairs = start.clone();
        let m = pairs.len();
        let mut present: std::collections::HashSet<(usize, usize)> = pairs.iter().copied().collect();
        for _ in 0..20 * m {
            let i = rng.gen_range(0..m);
            let j = rng.gen_range(0..m);
            if i == j {
                continue;
            }
            let (a, b) = pairs[i];
            let (mut c, mut d) = pairs[j];
            if rng.gen_bool(0.5) {
                std::mem::swap(&mut c, &mut d);
            }
            if a == c || a == d || b == c || b == d {
                continue;
            }
            let x = (a.min(c), a.max(c));
            let y = (b.min(d), b.max(d));
            if present.contains(&x) || present.contains(&y) {
                continue;
            }
            present.remove(&pairs[i]);
            present.remove(&pairs[j]);
            present.insert(x);
            present.insert(y);
            pairs[i] = x;
            pairs[j] = y;
        }
        let g = normalized(n, pairs, None);
        if is_two_edge_connected(&g).two_edge_connected() {
            return Ok(g);
        }
    }
}

/// [`random_cubic`] with `negatives` edges chosen uniformly to be negative.
pub fn random_signed_cubic(n: usize, negatives: usize, seed: u64) -> Result<SignedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = 3 * n / 2;
    if negatives > m {
        return Err(Error::Precondition(format!(
            "{negatives} negative edges requested but m = {m}"
        )));
    }
    let g = random_cubic(n, &mut rng)?;
    let mut signs = vec![Sign::Positive; g.edge_count()];
    for e in sample(&mut rng, g.edge_count(), negatives) {
        signs[e] = Sign::Negative;
    }
    Ok(g.with_signature(&signs))
}

/// Random signed cycle-tree of maximum degree 3: up to `max_cycles` cycles
/// (digons allowed) hung off each other by paths of 1 to 3 edges, at most
/// `max_edges` edges, every cycle carrying a negative edge and an even
/// number of negative cycles. Path edges are positive.
pub fn random_cycle_tree<R: Rng>(rng: &mut R, max_cycles: usize, max_edges: usize) -> SignedGraph {
    let max_cycles = max_cycles.max(1);
    let target = rng.gen_range(1..=max_cycles);
    let mut n = 0usize;
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut degree: Vec<usize> = Vec::new();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut add_vertex = |degree: &mut Vec<usize>| {
        degree.push(0);
        n += 1;
        n - 1
    };
    let add_edge = |pairs: &mut Vec<(usize, usize)>, degree: &mut Vec<usize>, u: usize, v: usize| {
        pairs.push((u, v));
        degree[u] += 1;
        degree[v] += 1;
        pairs.len() - 1
    };

    for k in 0..target {
        let len = rng.gen_range(2..=6);
        let path = if k == 0 { 0 } else { rng.gen_range(1..=3) };
        if pairs.len() + len + path > max_edges {
            break;
        }
        let anchor = if k == 0 {
            None
        } else {
            let free: Vec<usize> = (0..degree.len()).filter(|&v| degree[v] == 2).collect();
            match free.choose(rng) {
                Some(&v) => Some(v),
                None => break,
            }
        };
        let first = add_vertex(&mut degree);
        if let Some(a) = anchor {
            let mut prev = a;
            for _ in 1..path {
                let w = add_vertex(&mut degree);
                add_edge(&mut pairs, &mut degree, prev, w);
                prev = w;
            }
            add_edge(&mut pairs, &mut degree, prev, first);
        }
        let mut ring = vec![first];
        for _ in 1..len {
            ring.push(add_vertex(&mut degree));
        }
        let mut edges = Vec::new();
        for i in 0..len {
            edges.push(add_edge(&mut pairs, &mut degree, ring[i], ring[(i + 1) % len]));
        }
        cycles.push(edges);
    }

    let mut signs = vec![Sign::Positive; pairs.len()];
    for c in &cycles {
        signs[*c.choose(rng).expect("cycle has edges")] = Sign::Negative;
        for &e in c {
            if rng.gen_bool(0.3) {
                signs[e] = Sign::Negative;
            }
        }
    }
    let cycle_sign = |signs: &[Sign], c: &[usize]| Sign::product(c.iter().map(|&e| signs[e]));
    let negative_cycles = cycles.iter().filter(|c| cycle_sign(&signs, c).is_negative()).count();
    if negative_cycles % 2 == 1 {
        // flip one edge of some cycle while keeping a negative edge on it
        let c = cycles.choose(rng).expect("at least one cycle");
        let e = match c.iter().copied().find(|&e| signs[e].is_positive()) {
            Some(e) => e,
            None => c[0],
        };
        signs[e] = signs[e].flip();
    }
    SignedGraph::from_edges(n, pairs.into_iter().zip(signs).map(|((u, v), s)| (u, v, s))).expect("valid edges")
}

/// Joins two cubic graphs across a 2-edge-cut: deletes the smallest-id edge
/// of each and reconnects the four loose ends by two edges.
pub fn two_cut_join(a: &SignedGraph, b: &SignedGraph) -> Result<SignedGraph> {
    if a.edge_count() == 0 || b.edge_count() == 0 {
        return Err(Error::Precondition("both graphs need an edge".into()));
    }
    let shift = a.vertex_count();
    let (a0, b0) = (*a.edge(0), *b.edge(0));
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut signs = Vec::new();
    for edge in a.edges().iter().skip(1) {
        pairs.push((edge.u, edge.v));
        signs.push(edge.sign);
    }
    for edge in b.edges().iter().skip(1) {
        pairs.push((edge.u + shift, edge.v + shift));
        signs.push(edge.sign);
    }
    pairs.push((a0.u, b0.u + shift));
    signs.push(a0.sign);
    pairs.push((a0.v, b0.v + shift));
    signs.push(b0.sign);
    // normalise endpoint order, keeping each edge's sign
    let mut edges: Vec<((usize, usize), Sign)> = pairs
        .into_iter()
        .map(|(u, v)| (u.min(v), u.max(v)))
        .zip(signs)
        .collect();
    edges.sort_by_key(|&(p, _)| p);
    SignedGraph::from_edges(shift + b.vertex_count(), edges.into_iter().map(|((u, v), s)| (u, v, s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycletree::CycleTree;

    #[test]
    fn four_vertices_give_k4() {
        for seed in 0..5 {
            assert_eq!(random_signed_cubic(4, 0, seed).unwrap(), k4());
        }
    }

    #[test]
    fn odd_order_is_rejected() {
        assert!(matches!(random_signed_cubic(5, 0, 1), Err(Error::Precondition(_))));
        assert!(matches!(random_signed_cubic(6, 10, 1), Err(Error::Precondition(_))));
    }

    #[test]
    fn generator_is_deterministic() {
        let a = random_signed_cubic(12, 3, 99).unwrap();
        assert_eq!(a, random_signed_cubic(12, 3, 99).unwrap());
        assert!(a.is_cubic());
        assert_eq!(a.negative_count(), 3);
        assert!(is_two_edge_connected(&a).two_edge_connected());
        assert_eq!(a.to_text().parse::<SignedGraph>().unwrap(), a);
    }

    #[test]
    fn fixtures_are_cubic() {
        for g in [k4(), prism(3), prism(5), petersen()] {
            assert!(g.is_cubic());
        }
    }

    #[test]
    fn cycle_trees_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = random_cycle_tree(&mut rng, 7, 40);
            assert!(g.edge_count() <= 40);
            assert!(g.max_degree() <= 3);
            let all: Vec<usize> = (0..g.edge_count()).collect();
            let h = CycleTree::new(&g, &all).unwrap();
            assert!(h.cycles().len() <= 7);
            assert_eq!(h.negative_cycle_count() % 2, 0);
        }
    }

    #[test]
    fn two_cut_join_keeps_cubic() {
        let g = two_cut_join(&k4(), &prism(3)).unwrap();
        assert!(g.is_cubic());
        assert!(is_two_edge_connected(&g).two_edge_connected());
        assert_eq!(g.vertex_count(), 10);
    }
}
