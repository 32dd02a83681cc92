//! Exact minimum-weight set cover over at most 64 elements by depth-first
//! branch-and-bound.

use std::collections::HashMap;
use std::time::Instant;

/// Limits on a search; `None` means unlimited.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Limits {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

#[derive(Debug, Clone)]
pub(crate) struct Outcome {
    /// Cost and sorted set indices of the best cover found.
    pub best: Option<(usize, Vec<usize>)>,
    pub nodes: u64,
    /// The search finished, so `best` is optimal (or no cover exists).
    pub complete: bool,
}

const MEMO_CAP: usize = 1 << 21;

struct Search<'a> {
    sets: &'a [u64],
    costs: &'a [usize],
    containing: Vec<Vec<usize>>,
    best_cost: usize,
    best: Option<Vec<usize>>,
    chosen: Vec<usize>,
    memo: HashMap<u64, usize>,
    nodes: u64,
    limits: Limits,
    aborted: bool,
}

/// Covers `universe` with the given sets (bit masks) minimising total cost.
pub(crate) fn solve(universe: u64, sets: &[u64], costs: &[usize], limits: Limits) -> Outcome {
    debug_assert_eq!(sets.len(), costs.len());
    let mut containing = vec![Vec::new(); 64];
    for (i, &s) in sets.iter().enumerate() {
        for b in bits(s & universe) {
            containing[b].push(i);
        }
    }
    if bits(universe).any(|b| containing[b].is_empty()) {
        return Outcome {
            best: None,
            nodes: 0,
            complete: true,
        };
    }
    let greedy = greedy_cover(universe, sets, costs);
    let greedy_cost: usize = greedy.iter().map(|&i| costs[i]).sum();
    let mut search = Search {
        sets,
        costs,
        containing,
        best_cost: greedy_cost,
        best: Some(greedy),
        chosen: Vec::new(),
        memo: HashMap::new(),
        nodes: 0,
        limits,
        aborted: false,
    };
    search.dfs(universe, 0);
    let mut best = search.best.expect("greedy cover exists");
    best.sort_unstable();
    Outcome {
        best: Some((search.best_cost, best)),
        nodes: search.nodes,
        complete: !search.aborted,
    }
}

fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let b = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(b)
        }
    })
}

/// Repeatedly takes the set with the best cost per newly covered element,
/// then drops members made redundant by later choices.
fn greedy_cover(universe: u64, sets: &[u64], costs: &[usize]) -> Vec<usize> {
    let mut covered = 0u64;
    let mut chosen = Vec::new();
    while covered & universe != universe {
        let uncovered = universe & !covered;
        let pick = (0..sets.len())
            .filter(|&i| sets[i] & uncovered != 0)
            .min_by(|&a, &b| {
                let ra = costs[a] * (sets[b] & uncovered).count_ones() as usize;
                let rb = costs[b] * (sets[a] & uncovered).count_ones() as usize;
                ra.cmp(&rb).then(a.cmp(&b))
            })
            .expect("every element is coverable");
        chosen.push(pick);
        covered |= sets[pick];
    }
    // drop redundant members, most expensive first
    let mut order = chosen.clone();
    order.sort_by_key(|&i| std::cmp::Reverse(costs[i]));
    for i in order {
        let rest: u64 = chosen.iter().filter(|&&j| j != i).fold(0, |acc, &j| acc | sets[j]);
        if rest & universe == universe {
            chosen.retain(|&j| j != i);
        }
    }
    chosen
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.aborted {
            return true;
        }
        if let Some(max) = self.limits.max_nodes {
            if self.nodes >= max {
                self.aborted = true;
            }
        }
        if let Some(deadline) = self.limits.deadline {
            if self.nodes.is_multiple_of(1024) && Instant::now() >= deadline {
                self.aborted = true;
            }
        }
        self.aborted
    }

    /// Σ over uncovered elements of the cheapest cost share among sets
    /// containing it, rounded up.
    fn lower_bound(&self, uncovered: u64) -> usize {
        let mut total = 0f64;
        for b in bits(uncovered) {
            let share = self.containing[b]
                .iter()
                .map(|&i| self.costs[i] as f64 / (self.sets[i] & uncovered).count_ones() as f64)
                .fold(f64::INFINITY, f64::min);
            total += share;
        }
        (total - 1e-9).ceil().max(0.0) as usize
    }

    fn dfs(&mut self, uncovered: u64, cost: usize) {
        self.nodes += 1;
        if self.out_of_budget() {
            return;
        }
        if uncovered == 0 {
            if cost < self.best_cost {
                self.best_cost = cost;
                self.best = Some(self.chosen.clone());
            }
            return;
        }
        if cost + self.lower_bound(uncovered) >= self.best_cost {
            return;
        }
        if let Some(&seen) = self.memo.get(&uncovered) {
            if seen <= cost {
                return;
            }
        }
        if self.memo.len() < MEMO_CAP {
            self.memo.insert(uncovered, cost);
        } else if let Some(v) = self.memo.get_mut(&uncovered) {
            *v = cost;
        }

        let pivot = bits(uncovered)
            .min_by_key(|&b| (self.containing[b].len(), b))
            .expect("uncovered is nonempty");
        let mut options: Vec<usize> = self.containing[pivot].clone();
        options.sort_by(|&a, &b| {
            let ra = self.costs[a] * (self.sets[b] & uncovered).count_ones() as usize;
            let rb = self.costs[b] * (self.sets[a] & uncovered).count_ones() as usize;
            ra.cmp(&rb).then(a.cmp(&b))
        });
        for i in options {
            self.chosen.push(i);
            self.dfs(uncovered & !self.sets[i], cost + self.costs[i]);
            self.chosen.pop();
            if self.aborted {
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(universe: u64, sets: &[u64], costs: &[usize]) -> Option<usize> {
        let k = sets.len();
        (0u32..1 << k)
            .filter(|mask| (0..k).filter(|i| mask >> i & 1 == 1).fold(0, |a, i| a | sets[i]) & universe == universe)
            .map(|mask| (0..k).filter(|i| mask >> i & 1 == 1).map(|i| costs[i]).sum())
            .min()
    }

    #[test]
    fn small_instance() {
        let sets = [0b0011, 0b1100, 0b0110, 0b1111];
        let costs = [2, 2, 1, 5];
        let out = solve(0b1111, &sets, &costs, Limits::default());
        assert!(out.complete);
        assert_eq!(out.best.unwrap().0, 4);
    }

    #[test]
    fn uncoverable_element() {
        let out = solve(0b111, &[0b011], &[1], Limits::default());
        assert!(out.best.is_none());
        assert!(out.complete);
    }

    #[test]
    fn node_budget_marks_incomplete() {
        let sets: Vec<u64> = (0..12).map(|i| 0b111u64 << i).collect();
        let costs = vec![3; 12];
        let out = solve(
            (1 << 14) - 1,
            &sets,
            &costs,
            Limits {
                max_nodes: Some(1),
                deadline: None,
            },
        );
        assert!(!out.complete);
        assert!(out.best.is_some());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn matches_brute_force(sets in proptest::collection::vec(1u64..256, 1..11), costs in proptest::collection::vec(1usize..6, 11)) {
                let universe = 0xffu64;
                let costs = &costs[..sets.len()];
                let out = solve(universe, &sets, costs, Limits::default());
                prop_assert_eq!(out.best.map(|b| b.0), brute(universe, &sets, costs));
            }
        }
    }
}
