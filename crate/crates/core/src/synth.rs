//! Synthetic graphs: the ring-of-groups family with a constant-size
//! hierarchical encoding, Erdős–Rényi graphs and connected caveman graphs.

use rand::Rng;

use crate::error::{domain, Result};
use crate::flat::FlatEncoding;
use crate::graph::{InputGraph, NodeId};
use crate::rng;
use crate::summary::{HierarchicalSummary, Sign, SupernodeId};

/// `n` groups of `k` nodes on a ring. A node is adjacent to every other
/// node except the members of the two ring-neighbouring groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TheoremSpec {
    pub n: usize,
    pub k: usize,
}

impl TheoremSpec {
    fn check(&self) -> Result<()> {
        if self.n < 3 {
            return domain(format!("need at least 3 groups on the ring, got {}", self.n));
        }
        if self.k < 1 {
            return domain("groups need at least one node");
        }
        Ok(())
    }

    pub fn node_count(&self) -> usize {
        self.n * self.k
    }

    /// Every node has degree `(n - 2)k - 1`.
    pub fn edge_count(&self) -> usize {
        self.n * self.k * ((self.n - 2) * self.k - 1) / 2
    }

    /// Cost of [`reference_hier_encoding`]: `nk + 2n + 1`.
    pub fn reference_cost(&self) -> usize {
        self.n * self.k + 2 * self.n + 1
    }

    fn group(&self, u: usize) -> usize {
        u / self.k
    }

    fn ring_adjacent(&self, g: usize, h: usize) -> bool {
        (g + 1) % self.n == h || (h + 1) % self.n == g
    }
}

pub fn theorem_graph(spec: TheoremSpec) -> Result<InputGraph> {
    spec.check()?;
    let nodes = spec.node_count();
    let mut edges = Vec::with_capacity(spec.edge_count());
    for u in 0..nodes {
        for v in u + 1..nodes {
            if !spec.ring_adjacent(spec.group(u), spec.group(v)) {
                edges.push((u as NodeId, v as NodeId));
            }
        }
    }
    InputGraph::from_edges(nodes, edges)
}

/// A root over the `n` group supernodes, one p-loop on the root and one
/// n-edge per pair of ring-adjacent groups.
pub fn reference_hier_encoding(spec: TheoremSpec) -> Result<HierarchicalSummary> {
    spec.check()?;
    let mut s = HierarchicalSummary::empty(spec.node_count());
    let groups: Vec<SupernodeId> = (0..spec.n)
        .map(|g| {
            let members: Vec<SupernodeId> = (g * spec.k..(g + 1) * spec.k).map(|u| u as SupernodeId).collect();
            s.merge_roots(&members)
        })
        .collect::<Result<_>>()?;
    let root = s.merge_roots(&groups)?;
    s.set_edge(root, root, Some(Sign::Pos))?;
    for g in 0..spec.n {
        s.set_edge(groups[g], groups[(g + 1) % spec.n], Some(Sign::Neg))?;
    }
    Ok(s)
}

/// Outcome of checking that every supernode with at least `8k` subnodes has
/// a superedge to every supernode (itself included).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub large_supernodes: usize,
    /// `(large supernode, supernode)` pairs lacking a superedge.
    pub missing: Vec<(u32, u32)>,
    pub cost: usize,
    pub edge_count: usize,
}

impl WitnessReport {
    pub fn holds(&self) -> bool {
        self.missing.is_empty()
    }
}

pub fn flat_lower_bound_witness(spec: TheoremSpec, flat: &FlatEncoding) -> Result<WitnessReport> {
    let g = theorem_graph(spec)?;
    if !flat.encodes(&g) {
        return domain("flat encoding does not encode the theorem graph");
    }
    let threshold = 8 * spec.k;
    let count = flat.groups().len() as u32;
    let mut large = 0;
    let mut missing = Vec::new();
    for (a, members) in flat.groups().iter().enumerate() {
        if members.len() < threshold {
            continue;
        }
        large += 1;
        for b in 0..count {
            if !flat.has_superedge(a as u32, b) {
                missing.push((a as u32, b));
            }
        }
    }
    Ok(WitnessReport { large_supernodes: large, missing, cost: flat.cost(), edge_count: g.edge_count() })
}

/// Erdős–Rényi `G(n, p)` by geometric skipping over the pairs `(v, w)`,
/// `w < v`.
pub fn er_graph(n: usize, p: f64, seed: u64) -> Result<InputGraph> {
    if !(0.0..=1.0).contains(&p) {
        return domain(format!("edge probability {p} outside [0, 1]"));
    }
    let mut edges = Vec::new();
    if p == 1.0 {
        for v in 0..n {
            for w in 0..v {
                edges.push((v as NodeId, w as NodeId));
            }
        }
    } else if p > 0.0 {
        let mut rng = rng::stream(seed, rng::TAG_GEN, 0, 0);
        let log_q = (1.0 - p).ln();
        let (mut v, mut w) = (1usize, -1i64);
        while v < n {
            let r: f64 = rng.gen();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v as i64 && v < n {
                w -= v as i64;
                v += 1;
            }
            if v < n {
                edges.push((v as NodeId, w as NodeId));
            }
        }
    }
    InputGraph::from_edges(n, edges)
}

/// `cliques` disjoint cliques of `size` nodes, consecutive cliques joined by
/// one edge between random members.
pub fn caveman_graph(cliques: usize, size: usize, seed: u64) -> Result<InputGraph> {
    if cliques < 1 || size < 2 {
        return domain("caveman graphs need at least one clique of at least two nodes");
    }
    let mut rng = rng::stream(seed, rng::TAG_GEN, 1, 0);
    let mut edges = Vec::new();
    for c in 0..cliques {
        let base = c * size;
        for i in 0..size {
            for j in i + 1..size {
                edges.push(((base + i) as NodeId, (base + j) as NodeId));
            }
        }
        if c + 1 < cliques {
            let u = base + rng.gen_range(0..size);
            let v = base + size + rng.gen_range(0..size);
            edges.push((u as NodeId, v as NodeId));
        }
    }
    InputGraph::from_edges(cliques * size, edges)
}
