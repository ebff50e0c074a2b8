//! Independence number: exact branch and bound on small graphs, a
//! greedy-plus-local-search lower bound otherwise.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::NsGraph;

/// Search-tree node cap for the exact solver. Past it the best set found
/// is reported as a lower bound.
const EXACT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IndependenceKind {
    Exact,
    LowerBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Independence {
    pub value: usize,
    pub kind: IndependenceKind,
    pub exact_limit: usize,
    /// A witness set of size `value`, as element indices.
    pub set: Vec<usize>,
}

impl NsGraph {
    /// Exact when the vertex count is at most `exact_limit` (and the search
    /// finishes within its node budget), a certified lower bound otherwise.
    pub fn independence_number(&self, exact_limit: usize) -> Independence {
        let n = self.vertex_count();
        let mut best = self.heuristic_independent_set();
        let mut kind = IndependenceKind::LowerBound;
        if n <= exact_limit {
            let mut solver = CliqueSolver::new(self);
            let mut current = Vec::new();
            let all = FixedBitSet::with_capacity(n).tap_fill();
            solver.best = best.clone();
            solver.expand(&mut current, all);
            best = solver.best;
            if !solver.exhausted {
                kind = IndependenceKind::Exact;
            }
        }
        let mut set: Vec<usize> = best.into_iter().map(|p| self.vertices[p]).collect();
        set.sort_unstable();
        let result = Independence {
            value: set.len(),
            kind,
            exact_limit,
            set,
        };
        self.record(|inv| inv.independence = Some(result.clone()));
        result
    }

    /// Best of greedy extensions from the empty set and from the hint set,
    /// each improved by (1,2)-swaps. Positions, not elements.
    fn heuristic_independent_set(&self) -> Vec<usize> {
        let mut best = self.local_search(self.greedy_extend(Vec::new()));
        if !self.hint.is_empty() {
            let seeded = self.local_search(self.greedy_extend(self.hint.clone()));
            if seeded.len() > best.len() {
                best = seeded;
            }
        }
        best
    }

    /// Adds minimum-degree free vertices until none is left.
    fn greedy_extend(&self, mut set: Vec<usize>) -> Vec<usize> {
        let n = self.vertex_count();
        let mut free = FixedBitSet::with_capacity(n).tap_fill();
        for &p in &set {
            free.set(p, false);
            free.difference_with(&self.adj[p]);
        }
        while let Some(p) = free
            .ones()
            .min_by_key(|&p| (self.adj[p].intersection(&free).count(), p))
        {
            set.push(p);
            free.set(p, false);
            free.difference_with(&self.adj[p]);
        }
        set
    }

    /// Replaces one member by two nonadjacent vertices whose only neighbor
    /// in the set is that member, then re-extends, until no swap applies.
    fn local_search(&self, mut set: Vec<usize>) -> Vec<usize> {
        let n = self.vertex_count();
        'improve: loop {
            let mut in_set = FixedBitSet::with_capacity(n);
            for &p in &set {
                in_set.insert(p);
            }
            for (i, &v) in set.iter().enumerate() {
                let tight: Vec<usize> = self.adj[v]
                    .ones()
                    .filter(|&u| self.adj[u].intersection(&in_set).count() == 1)
                    .collect();
                for (a, &u) in tight.iter().enumerate() {
                    if let Some(&w) = tight[a + 1..].iter().find(|&&w| !self.adj[u].contains(w)) {
                        let mut next = set.clone();
                        next.swap_remove(i);
                        next.push(u);
                        next.push(w);
                        set = self.greedy_extend(next);
                        continue 'improve;
                    }
                }
            }
            return set;
        }
    }
}

trait TapFill {
    fn tap_fill(self) -> Self;
}

impl TapFill for FixedBitSet {
    fn tap_fill(mut self) -> Self {
        self.insert_range(..);
        self
    }
}

/// Maximum clique in the complement graph with greedy-coloring bounds.
struct CliqueSolver<'a> {
    graph: &'a NsGraph,
    best: Vec<usize>,
    nodes: u64,
    exhausted: bool,
}

impl<'a> CliqueSolver<'a> {
    fn new(graph: &'a NsGraph) -> Self {
        CliqueSolver {
            graph,
            best: Vec::new(),
            nodes: 0,
            exhausted: false,
        }
    }

    /// Non-neighbors of `p` in the original graph, excluding `p`.
    fn compatible(&self, p: usize, within: &FixedBitSet) -> FixedBitSet {
        let mut out = within.clone();
        out.difference_with(&self.graph.adj[p]);
        out.set(p, false);
        out
    }

    /// Greedy coloring of the candidates where each color class is a set of
    /// mutually adjacent vertices (hence at most one can join a clique of
    /// the complement). Returns candidates in color order with their color.
    fn color_sort(&self, candidates: &FixedBitSet) -> Vec<(usize, usize)> {
        let mut uncolored = candidates.clone();
        let mut out = Vec::with_capacity(candidates.count_ones(..));
        let mut color = 0;
        while !uncolored.is_clear() {
            color += 1;
            let mut open = uncolored.clone();
            while let Some(p) = open.ones().next() {
                open.set(p, false);
                // p shares this color only with its neighbors in the original graph
                open.intersect_with(&self.graph.adj[p]);
                uncolored.set(p, false);
                out.push((p, color));
            }
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut candidates: FixedBitSet) {
        self.nodes += 1;
        if self.nodes > EXACT_NODE_BUDGET {
            self.exhausted = true;
            return;
        }
        let order = self.color_sort(&candidates);
        for &(p, color) in order.iter().rev() {
            if current.len() + color <= self.best.len() || self.exhausted {
                return;
            }
            current.push(p);
            let next = self.compatible(p, &candidates);
            if next.is_clear() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            candidates.set(p, false);
        }
    }
}
