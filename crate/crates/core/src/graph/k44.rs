//! K_{4,4} subgraph search.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::NsGraph;
use crate::error::{Error, Result};

/// Two disjoint 4-sets with all 16 cross edges present, by element index.
/// Edges inside a part are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K44Witness {
    pub left: [usize; 4],
    pub right: [usize; 4],
}

struct Search<'a> {
    graph: &'a NsGraph,
    budget: u64,
    probes: u64,
}

impl Search<'_> {
    fn charge(&mut self) -> Result<()> {
        self.probes += self.graph.vertex_count() as u64;
        if self.probes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        Ok(())
    }

    /// Picks 4 vertices of `pool` (in `order`) whose common neighborhood
    /// within `targets` has at least 4 vertices.
    fn pick(
        &mut self,
        order: &[usize],
        start: usize,
        chosen: &mut Vec<usize>,
        common: &FixedBitSet,
    ) -> Result<Option<(Vec<usize>, FixedBitSet)>> {
        if chosen.len() == 4 {
            return Ok(Some((chosen.clone(), common.clone())));
        }
        for i in start..order.len() {
            let p = order[i];
            self.charge()?;
            let mut next = common.clone();
            next.intersect_with(&self.graph.adj[p]);
            if next.count_ones(..) < 4 {
                continue;
            }
            chosen.push(p);
            if let Some(hit) = self.pick(order, i + 1, chosen, &next)? {
                return Ok(Some(hit));
            }
            chosen.pop();
        }
        Ok(None)
    }
}

impl NsGraph {
    /// Searches for a K_{4,4}. Parts are first drawn from the two largest
    /// conjugacy classes, then from all vertices in class-size order.
    /// `Ok(None)` means none exists; running out of `budget` adjacency
    /// probes is an error.
    pub fn find_k44(&self, budget: u64) -> Result<Option<K44Witness>> {
        let n = self.vertex_count();
        let mut class_size = std::collections::HashMap::<usize, usize>::new();
        for &c in &self.classes {
            *class_size.entry(c).or_default() += 1;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| {
            (
                std::cmp::Reverse(class_size[&self.classes[p]]),
                self.classes[p],
                p,
            )
        });

        let mut search = Search {
            graph: self,
            budget,
            probes: 0,
        };

        let mut ranked: Vec<(usize, usize)> = class_size.iter().map(|(&c, &s)| (s, c)).collect();
        ranked.sort_by_key(|&(s, c)| (std::cmp::Reverse(s), c));
        let found = if ranked.len() >= 2 {
            let (a, b) = (ranked[0].1, ranked[1].1);
            let left: Vec<usize> = order.iter().copied().filter(|&p| self.classes[p] == a).collect();
            let mut targets = FixedBitSet::with_capacity(n);
            for p in (0..n).filter(|&p| self.classes[p] == b) {
                targets.insert(p);
            }
            search.pick(&left, 0, &mut Vec::new(), &targets)?
        } else {
            None
        };
        let found = match found {
            Some(hit) => Some(hit),
            None => {
                let all = {
                    let mut b = FixedBitSet::with_capacity(n);
                    b.insert_range(..);
                    b
                };
                search.pick(&order, 0, &mut Vec::new(), &all)?
            }
        };
        let witness = found.map(|(left, common)| {
            let right: Vec<usize> = common.ones().take(4).collect();
            K44Witness {
                left: std::array::from_fn(|i| self.vertices[left[i]]),
                right: std::array::from_fn(|i| self.vertices[right[i]]),
            }
        });
        if let Some(w) = &witness {
            debug_assert!(self.is_k44(w));
            self.record(|inv| {
                inv.k44 = Some(w.clone());
                inv.planar = Some(false);
            });
        }
        Ok(witness)
    }

    /// Checks the 16 cross adjacencies and disjointness of a witness.
    pub fn is_k44(&self, w: &K44Witness) -> bool {
        let disjoint = w.left.iter().all(|x| !w.right.contains(x));
        let mut all = w.left.to_vec();
        all.extend_from_slice(&w.right);
        all.sort_unstable();
        all.dedup();
        disjoint
            && all.len() == 8
            && w.left
                .iter()
                .all(|&x| w.right.iter().all(|&y| self.adjacent(x, y)))
    }
}
