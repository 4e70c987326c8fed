//! The height-one model: disjoint supernodes, superedges between them and
//! subnode-level corrections. A superedge `{A, B}` stands for every pair
//! `(u, v)` with `u in A`, `v in B`, `u != v`.

use std::collections::BTreeSet;

use crate::error::{domain, Result};
use crate::graph::{InputGraph, NodeId};
use crate::summary::{HierarchicalSummary, Sign};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatEncoding {
    group_of: Vec<u32>,
    groups: Vec<Vec<NodeId>>,
    superedges: BTreeSet<(u32, u32)>,
    c_plus: BTreeSet<(NodeId, NodeId)>,
    c_minus: BTreeSet<(NodeId, NodeId)>,
}

fn ordered<T: Ord>(a: T, b: T) -> (T, T) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl FlatEncoding {
    /// Validates the partition and edge sets. Corrections must agree with
    /// the superedges: `C+` pairs uncovered, `C-` pairs covered.
    pub fn new(
        node_count: usize,
        partition: Vec<Vec<NodeId>>,
        superedges: impl IntoIterator<Item = (u32, u32)>,
        c_plus: impl IntoIterator<Item = (NodeId, NodeId)>,
        c_minus: impl IntoIterator<Item = (NodeId, NodeId)>,
    ) -> Result<Self> {
        let mut group_of = vec![u32::MAX; node_count];
        let mut groups = partition;
        for (i, grp) in groups.iter_mut().enumerate() {
            if grp.is_empty() {
                return domain(format!("supernode {i} is empty"));
            }
            grp.sort_unstable();
            for &u in grp.iter() {
                let slot = group_of
                    .get_mut(u as usize)
                    .ok_or_else(|| crate::error::Error::Domain(format!("subnode {u} out of range")))?;
                if *slot != u32::MAX {
                    return domain(format!("subnode {u} in two supernodes"));
                }
                *slot = i as u32;
            }
        }
        if let Some(u) = group_of.iter().position(|&g| g == u32::MAX) {
            return domain(format!("subnode {u} in no supernode"));
        }
        let mut out = FlatEncoding {
            group_of,
            groups,
            superedges: BTreeSet::new(),
            c_plus: BTreeSet::new(),
            c_minus: BTreeSet::new(),
        };
        for (a, b) in superedges {
            if a as usize >= out.groups.len() || b as usize >= out.groups.len() {
                return domain(format!("superedge ({a}, {b}) out of range"));
            }
            out.superedges.insert(ordered(a, b));
        }
        for (u, v) in c_plus {
            out.check_pair(u, v)?;
            if out.covered(u, v) {
                return domain(format!("C+ pair ({u}, {v}) is already covered"));
            }
            out.c_plus.insert(ordered(u, v));
        }
        for (u, v) in c_minus {
            out.check_pair(u, v)?;
            if !out.covered(u, v) {
                return domain(format!("C- pair ({u}, {v}) is not covered"));
            }
            out.c_minus.insert(ordered(u, v));
        }
        Ok(out)
    }

    fn check_pair(&self, u: NodeId, v: NodeId) -> Result<()> {
        if u == v || u as usize >= self.group_of.len() || v as usize >= self.group_of.len() {
            return domain(format!("bad correction pair ({u}, {v})"));
        }
        Ok(())
    }

    /// Cheapest encoding for the given partition: per supernode pair, either
    /// a superedge plus `C-` for absent pairs or `C+` for every edge. Ties go
    /// to the corrections-only form, except that a complete block is always
    /// a bare superedge.
    pub fn optimal_for(g: &InputGraph, partition: Vec<Vec<NodeId>>) -> Result<Self> {
        let base = FlatEncoding::new(g.node_count(), partition, [], [], [])?;
        let k = base.groups.len();
        let mut between = std::collections::HashMap::<(u32, u32), Vec<(NodeId, NodeId)>>::new();
        for (u, v) in g.edges() {
            let key = ordered(base.group_of[u as usize], base.group_of[v as usize]);
            between.entry(key).or_default().push((u, v));
        }
        let mut superedges = Vec::new();
        let mut c_plus = Vec::new();
        let mut c_minus = Vec::new();
        let mut keys: Vec<_> = between.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            let present = &between[&key];
            let (a, b) = key;
            let (sa, sb) = (base.groups[a as usize].len(), base.groups[b as usize].len());
            let total = if a == b { sa * (sa - 1) / 2 } else { sa * sb };
            if total == present.len() || total - present.len() + 1 < present.len() {
                superedges.push(key);
                let have: BTreeSet<_> = present.iter().copied().collect();
                for_each_pair(&base.groups[a as usize], &base.groups[b as usize], a == b, |u, v| {
                    if !have.contains(&ordered(u, v)) {
                        c_minus.push((u, v));
                    }
                });
            } else {
                c_plus.extend_from_slice(present);
            }
        }
        debug_assert!(superedges.iter().all(|&(a, b)| (a as usize) < k && (b as usize) < k));
        FlatEncoding::new(g.node_count(), base.groups, superedges, c_plus, c_minus)
    }

    /// Every subnode alone.
    pub fn singletons(g: &InputGraph) -> Result<Self> {
        Self::optimal_for(g, (0..g.node_count() as NodeId).map(|u| vec![u]).collect())
    }

    pub fn node_count(&self) -> usize {
        self.group_of.len()
    }

    pub fn groups(&self) -> &[Vec<NodeId>] {
        &self.groups
    }

    pub fn group_of(&self, u: NodeId) -> u32 {
        self.group_of[u as usize]
    }

    pub fn superedges(&self) -> &BTreeSet<(u32, u32)> {
        &self.superedges
    }

    pub fn has_superedge(&self, a: u32, b: u32) -> bool {
        self.superedges.contains(&ordered(a, b))
    }

    pub fn c_plus(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.c_plus
    }

    pub fn c_minus(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.c_minus
    }

    /// Membership edges of non-singleton supernodes.
    pub fn h_star(&self) -> usize {
        self.groups.iter().filter(|g| g.len() > 1).map(Vec::len).sum()
    }

    /// |P| + |C+| + |C-| + |H*|.
    pub fn cost(&self) -> usize {
        self.superedges.len() + self.c_plus.len() + self.c_minus.len() + self.h_star()
    }

    fn covered(&self, u: NodeId, v: NodeId) -> bool {
        self.has_superedge(self.group_of[u as usize], self.group_of[v as usize])
    }

    pub fn decode(&self) -> Result<InputGraph> {
        let mut edges: BTreeSet<(NodeId, NodeId)> = self.c_plus.clone();
        for &(a, b) in &self.superedges {
            for_each_pair(&self.groups[a as usize], &self.groups[b as usize], a == b, |u, v| {
                edges.insert(ordered(u, v));
            });
        }
        for p in &self.c_minus {
            edges.remove(p);
        }
        InputGraph::from_edges(self.node_count(), edges)
    }

    pub fn encodes(&self, g: &InputGraph) -> bool {
        self.decode().map(|d| d == *g).unwrap_or(false)
    }

    /// The same encoding as a height-one hierarchy; costs agree.
    pub fn to_hierarchical(&self) -> Result<HierarchicalSummary> {
        let mut s = HierarchicalSummary::empty(self.node_count());
        let ids = self
            .groups
            .iter()
            .map(|grp| if grp.len() == 1 { Ok(grp[0]) } else { s.merge_roots(grp) })
            .collect::<Result<Vec<_>>>()?;
        for &(a, b) in &self.superedges {
            s.set_edge(ids[a as usize], ids[b as usize], Some(Sign::Pos))?;
        }
        for &(u, v) in &self.c_plus {
            s.set_edge(u, v, Some(Sign::Pos))?;
        }
        for &(u, v) in &self.c_minus {
            if s.set_edge(u, v, Some(Sign::Neg))?.is_some() {
                return domain(format!("pair ({u}, {v}) is both a superedge and a correction"));
            }
        }
        Ok(s)
    }
}

fn for_each_pair(a: &[NodeId], b: &[NodeId], same: bool, mut f: impl FnMut(NodeId, NodeId)) {
    if same {
        for (i, &u) in a.iter().enumerate() {
            for &v in &a[i + 1..] {
                f(u, v);
            }
        }
    } else {
        for &u in a {
            for &v in b {
                f(u, v);
            }
        }
    }
}
