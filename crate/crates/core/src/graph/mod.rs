//! The non-solvable graph and its invariants.
//!
//! Vertices are stored by position; `vertices[pos]` is the element index.
//! In full mode every element is a vertex, in induced mode the radical is
//! dropped. Witnesses returned to callers are always element indices.

mod export;
mod independence;
mod k44;

use std::collections::VecDeque;
use std::sync::Mutex;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solvabilizer::Analysis;

pub use export::{ExportFormat, GraphDocument, VertexDoc};
pub use independence::{Independence, IndependenceKind};
pub use k44::K44Witness;

/// Default vertex count up to which the independence number is exact.
pub const DEFAULT_EXACT_INDEPENDENCE: usize = 150;
/// Default adjacency-probe budget for the K_{4,4} search.
pub const DEFAULT_K44_BUDGET: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphMode {
    /// All of `G`; radical elements are isolated.
    Full,
    /// `G` minus the radical.
    Induced,
}

/// Invariants computed so far, with the parameters they were computed under.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Invariants {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameter: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub independence: Option<Independence>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k44: Option<K44Witness>,
    /// Only ever decided as `false`, from a K_{4,4} witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub planar: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub odd_cycle: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DiameterReport {
    pub diameter: usize,
    /// For each nonadjacent pair `x < y`, some `z` adjacent to both.
    #[serde(skip)]
    pub common_neighbors: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub regular: bool,
    /// Two `(element, degree)` pairs with different degrees.
    pub witness: Option<[(usize, usize); 2]>,
}

pub struct NsGraph {
    mode: GraphMode,
    vertices: Vec<usize>,
    adj: Vec<FixedBitSet>,
    labels: Vec<String>,
    orders: Vec<usize>,
    /// Class id per position; drives the K_{4,4} seeding.
    classes: Vec<usize>,
    /// Positions of a known independent set used to seed heuristics.
    hint: Vec<usize>,
    invariants: Mutex<Invariants>,
}

impl NsGraph {
    /// Edge `{x, y}` iff `<x, y>` is not solvable.
    pub fn build(analysis: &Analysis, mode: GraphMode) -> Self {
        let g = analysis.group();
        let radical = analysis.radical();
        let vertices: Vec<usize> = (0..g.order())
            .filter(|&x| mode == GraphMode::Full || !radical.contains(x))
            .collect();
        let mut position = vec![usize::MAX; g.order()];
        for (p, &x) in vertices.iter().enumerate() {
            position[x] = p;
        }
        let adj = vertices
            .iter()
            .map(|&x| {
                let row = analysis.row(x);
                let mut bits = FixedBitSet::with_capacity(vertices.len());
                for (p, &y) in vertices.iter().enumerate() {
                    if !row.contains(y) {
                        bits.insert(p);
                    }
                }
                bits
            })
            .collect();
        let classes = g.conjugacy_classes();
        // largest cyclic subgroup, plus the radical in full mode
        let top = (0..g.order()).max_by_key(|&x| (g.element_order(x), std::cmp::Reverse(x)));
        let mut hint: Vec<usize> = top
            .map(|x| g.cyclic_subgroup(x))
            .unwrap_or_default()
            .into_iter()
            .chain(if mode == GraphMode::Full {
                radical.members().to_vec()
            } else {
                Vec::new()
            })
            .filter_map(|x| (position[x] != usize::MAX).then_some(position[x]))
            .collect();
        hint.sort_unstable();
        hint.dedup();
        NsGraph {
            mode,
            labels: vertices.iter().map(|&x| g.label(x)).collect(),
            orders: vertices.iter().map(|&x| g.element_order(x)).collect(),
            classes: vertices.iter().map(|&x| classes.class_of[x]).collect(),
            vertices,
            adj,
            hint,
            invariants: Mutex::new(Invariants::default()),
        }
    }

    /// A graph on vertices `0..n` with the given edges, for fixtures.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![FixedBitSet::with_capacity(n); n];
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Precondition(format!("bad edge ({a}, {b})")));
            }
            adj[a].insert(b);
            adj[b].insert(a);
        }
        Ok(NsGraph {
            mode: GraphMode::Full,
            vertices: (0..n).collect(),
            adj,
            labels: (0..n).map(|i| i.to_string()).collect(),
            orders: vec![0; n],
            classes: vec![0; n],
            hint: Vec::new(),
            invariants: Mutex::new(Invariants::default()),
        })
    }

    pub fn mode(&self) -> GraphMode {
        self.mode
    }

    /// Element index of every vertex, ascending.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones(..)).sum::<usize>() / 2
    }

    fn position(&self, x: usize) -> Option<usize> {
        self.vertices.binary_search(&x).ok()
    }

    pub fn contains_vertex(&self, x: usize) -> bool {
        self.position(x).is_some()
    }

    /// Adjacency by element index; false when either is not a vertex.
    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        match (self.position(x), self.position(y)) {
            (Some(a), Some(b)) => self.adj[a].contains(b),
            _ => false,
        }
    }

    pub fn degree_of(&self, x: usize) -> Option<usize> {
        self.position(x).map(|p| self.adj[p].count_ones(..))
    }

    pub fn neighbors(&self, x: usize) -> Vec<usize> {
        self.position(x)
            .map(|p| self.adj[p].ones().map(|q| self.vertices[q]).collect())
            .unwrap_or_default()
    }

    /// `(element, neighbor)` pairs with `element < neighbor`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (p, row) in self.adj.iter().enumerate() {
            for q in row.ones().filter(|&q| q > p) {
                out.push((self.vertices[p], self.vertices[q]));
            }
        }
        out
    }

    /// Vertex degrees in ascending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.adj.iter().map(|a| a.count_ones(..)).collect();
        d.sort_unstable();
        d
    }

    pub fn invariants(&self) -> Invariants {
        self.invariants.lock().expect("invariant cache poisoned").clone()
    }

    fn record(&self, f: impl FnOnce(&mut Invariants)) {
        f(&mut self.invariants.lock().expect("invariant cache poisoned"));
    }

    fn bfs(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertex_count()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(p) = queue.pop_front() {
            for q in self.adj[p].ones() {
                if dist[q] == usize::MAX {
                    dist[q] = dist[p] + 1;
                    queue.push_back(q);
                }
            }
        }
        dist
    }

    /// Exact diameter by BFS from every vertex, together with a common
    /// neighbor for every nonadjacent pair. A disconnected graph is an
    /// error: for a non-solvable group the induced graph is connected.
    pub fn diameter(&self) -> Result<DiameterReport> {
        let n = self.vertex_count();
        let mut diameter = 0;
        for s in 0..n {
            let dist = self.bfs(s);
            if let Some(t) = dist.iter().position(|&d| d == usize::MAX) {
                return Err(Error::InvariantViolation(format!(
                    "graph is disconnected: no path from {} to {}",
                    self.vertices[s], self.vertices[t]
                )));
            }
            diameter = diameter.max(dist.into_iter().max().unwrap_or(0));
        }
        let mut common_neighbors = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                if self.adj[p].contains(q) {
                    continue;
                }
                let mut both = self.adj[p].clone();
                both.intersect_with(&self.adj[q]);
                if let Some(z) = both.ones().next() {
                    common_neighbors.push((self.vertices[p], self.vertices[q], self.vertices[z]));
                }
            }
        }
        self.record(|inv| inv.diameter = Some(diameter));
        Ok(DiameterReport {
            diameter,
            common_neighbors,
        })
    }

    pub fn is_regular(&self) -> Regularity {
        let deg = |p: usize| self.adj[p].count_ones(..);
        let witness = (1..self.vertex_count())
            .find(|&p| deg(p) != deg(0))
            .map(|p| [(self.vertices[0], deg(0)), (self.vertices[p], deg(p))]);
        let regular = witness.is_none();
        self.record(|inv| inv.regular = Some(regular));
        Regularity { regular, witness }
    }

    fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs(0).iter().all(|&d| d != usize::MAX)
    }

    /// Connected with exactly `|V| - 1` edges.
    pub fn is_tree(&self) -> bool {
        let tree =
            self.vertex_count() > 0 && self.edge_count() + 1 == self.vertex_count() && self.is_connected();
        self.record(|inv| inv.tree = Some(tree));
        tree
    }

    /// An odd cycle found by BFS 2-coloring, as element indices in cycle
    /// order, or `None` when the graph is bipartite.
    pub fn odd_cycle(&self) -> Option<Vec<usize>> {
        let n = self.vertex_count();
        let mut color = vec![u8::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut depth = vec![0usize; n];
        for root in 0..n {
            if color[root] != u8::MAX {
                continue;
            }
            color[root] = 0;
            let mut queue = VecDeque::from([root]);
            while let Some(p) = queue.pop_front() {
                for q in self.adj[p].ones() {
                    if color[q] == u8::MAX {
                        color[q] = 1 - color[p];
                        parent[q] = p;
                        depth[q] = depth[p] + 1;
                        queue.push_back(q);
                    } else if color[q] == color[p] {
                        let cycle = self.tree_cycle(p, q, &parent, &depth);
                        self.record(|inv| inv.odd_cycle = Some(cycle.clone()));
                        return Some(cycle);
                    }
                }
            }
        }
        None
    }

    /// The cycle closed by edge `{a, b}` through their BFS-tree ancestors.
    fn tree_cycle(&self, mut a: usize, mut b: usize, parent: &[usize], depth: &[usize]) -> Vec<usize> {
        let mut left = Vec::new();
        let mut right = Vec::new();
        while depth[a] > depth[b] {
            left.push(a);
            a = parent[a];
        }
        while depth[b] > depth[a] {
            right.push(b);
            b = parent[b];
        }
        while a != b {
            left.push(a);
            right.push(b);
            a = parent[a];
            b = parent[b];
        }
        left.push(a);
        left.extend(right.into_iter().rev());
        left.into_iter().map(|p| self.vertices[p]).collect()
    }

    /// Least vertex adjacent to both `x` and `y`.
    pub fn common_neighbor(&self, x: usize, y: usize) -> Option<usize> {
        let (a, b) = (self.position(x)?, self.position(y)?);
        let mut both = self.adj[a].clone();
        both.intersect_with(&self.adj[b]);
        both.ones().next().map(|p| self.vertices[p])
    }

    /// Pairwise nonadjacent, by element index.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        set.iter().enumerate().all(|(i, &x)| {
            self.contains_vertex(x) && set[i + 1..].iter().all(|&y| x != y && !self.adjacent(x, y))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> NsGraph {
        let edges: Vec<_> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        NsGraph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn regular_fixture() {
        assert!(complete(5).is_regular().regular);
        let path = NsGraph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let r = path.is_regular();
        assert!(!r.regular);
        assert_eq!(r.witness, Some([(0, 1), (1, 2)]));
    }

    #[test]
    fn trees_and_cycles() {
        let path = NsGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert!(path.is_tree());
        assert!(path.odd_cycle().is_none());
        let tri = complete(3);
        assert!(!tri.is_tree());
        let cyc = tri.odd_cycle().unwrap();
        assert_eq!(cyc.len(), 3);
        let pent = NsGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (4, 5)]).unwrap();
        let c = pent.odd_cycle().unwrap();
        assert_eq!(c.len() % 2, 1);
        for w in 0..c.len() {
            assert!(pent.adjacent(c[w], c[(w + 1) % c.len()]));
        }
        let square = NsGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert!(square.odd_cycle().is_none());
        assert!(!square.is_tree());
    }

    #[test]
    fn diameters() {
        let single = NsGraph::from_edges(1, &[]).unwrap();
        assert_eq!(single.diameter().unwrap().diameter, 0);
        let path = NsGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let d = path.diameter().unwrap();
        assert_eq!(d.diameter, 3);
        assert!(d.common_neighbors.contains(&(0, 2, 1)));
        let split = NsGraph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(split.diameter(), Err(Error::InvariantViolation(_))));
        assert_eq!(complete(4).diameter().unwrap().diameter, 1);
    }

    #[test]
    fn invariant_cache_records_results() {
        let g = complete(4);
        g.is_regular();
        g.diameter().unwrap();
        let inv = g.invariants();
        assert_eq!(inv.regular, Some(true));
        assert_eq!(inv.diameter, Some(1));
        assert_eq!(inv.tree, None);
    }

    #[test]
    fn bad_edges_rejected() {
        assert!(NsGraph::from_edges(2, &[(0, 0)]).is_err());
        assert!(NsGraph::from_edges(2, &[(0, 2)]).is_err());
    }
}
