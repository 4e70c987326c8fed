//! The hierarchical summary model: a supernode forest plus signed
//! super-edges. Subnodes `u != v` are adjacent iff the p-edges covering the
//! pair outnumber the n-edges covering it; valid summaries keep that net count
//! in `{0, 1}` for every pair.

mod cost;
mod decode;
mod edges;
mod forest;
mod format;
mod metrics;

pub use cost::{cost_components, pair_cost, root_pair_costs};
pub use decode::{decode, neighbors_of, verify_lossless, LosslessReport, Violation};
pub use edges::{SuperEdgeSet, Sign};
pub use forest::{SupernodeForest, SupernodeId};
pub use format::{deserialize, serialize, FORMAT_MAGIC};
pub use metrics::{
    edge_composition, flat_relative_size, relative_size, super_distance, tree_stats, TreeStats,
};

use crate::error::Result;
use crate::graph::InputGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchicalSummary {
    pub(crate) forest: SupernodeForest,
    pub(crate) edges: SuperEdgeSet,
}

impl HierarchicalSummary {
    /// Leaves only, no edges.
    pub fn empty(subnode_count: usize) -> Self {
        HierarchicalSummary {
            forest: SupernodeForest::new(subnode_count),
            edges: SuperEdgeSet::new(subnode_count),
        }
    }

    /// Singleton supernodes with one p-edge per input edge.
    pub fn trivial(g: &InputGraph) -> Self {
        let mut s = Self::empty(g.node_count());
        for (u, v) in g.edges() {
            s.edges.set(u, v, Some(Sign::Pos));
        }
        s
    }

    pub fn subnode_count(&self) -> usize {
        self.forest.leaf_count()
    }

    pub fn forest(&self) -> &SupernodeForest {
        &self.forest
    }

    pub fn edges(&self) -> &SuperEdgeSet {
        &self.edges
    }

    /// |P+| + |P-| + |H|.
    pub fn cost(&self) -> usize {
        self.edges.len() + self.forest.h_count()
    }

    pub fn p_count(&self) -> usize {
        self.edges.pos_count()
    }

    pub fn n_count(&self) -> usize {
        self.edges.neg_count()
    }

    pub fn h_count(&self) -> usize {
        self.forest.h_count()
    }

    pub fn roots(&self) -> Vec<SupernodeId> {
        self.forest.roots().collect()
    }

    /// Creates a root over the given roots without touching any edge.
    pub fn merge_roots(&mut self, members: &[SupernodeId]) -> Result<SupernodeId> {
        let id = self.forest.merge_roots(members)?;
        self.edges.grow(self.forest.id_bound());
        Ok(id)
    }

    /// Sets or clears the edge on a pair of live supernodes.
    pub fn set_edge(&mut self, a: SupernodeId, b: SupernodeId, sign: Option<Sign>) -> Result<Option<Sign>> {
        self.check_live(a)?;
        self.check_live(b)?;
        Ok(self.edges.set(a, b, sign))
    }

    /// Adds an edge, cancelling an opposite edge on the same pair.
    pub fn add_edge(&mut self, a: SupernodeId, b: SupernodeId, sign: Sign) -> Result<()> {
        self.check_live(a)?;
        self.check_live(b)?;
        self.edges.add(a, b, sign)
    }

    fn check_live(&self, x: SupernodeId) -> Result<()> {
        if self.forest.is_alive(x) {
            Ok(())
        } else {
            crate::error::domain(format!("supernode {x} does not exist"))
        }
    }

    /// Deletes an internal supernode that carries no edges, re-linking its children.
    pub fn splice_out(&mut self, x: SupernodeId) -> Result<Vec<SupernodeId>> {
        if self.edges.degree(x) > 0 {
            return crate::error::domain(format!("supernode {x} still carries edges"));
        }
        self.forest.splice_out(x)
    }

    /// Renumbers internal supernodes densely after deletions.
    pub fn compact(&mut self) {
        if self.forest.live_count() == self.forest.id_bound() {
            return;
        }
        let map = self.forest.compaction_map();
        let forest = self.forest.remapped(&map);
        let mut edges = SuperEdgeSet::new(forest.id_bound());
        for (a, b, s) in self.edges.iter() {
            let (a, b) = (map[a as usize].unwrap(), map[b as usize].unwrap());
            edges.set(a, b, Some(s));
        }
        self.forest = forest;
        self.edges = edges;
    }

    /// Forest consistency plus "no edge on a deleted supernode".
    pub fn check_structure(&self) -> Result<()> {
        self.forest.check()?;
        for (a, b, _) in self.edges.iter() {
            if !self.forest.is_alive(a) || !self.forest.is_alive(b) {
                return crate::error::domain(format!("edge ({a}, {b}) references a deleted supernode"));
            }
        }
        Ok(())
    }
}
