use std::collections::VecDeque;

use crate::error::{domain, Result};
use crate::flat::FlatEncoding;
use crate::graph::InputGraph;
use crate::summary::{HierarchicalSummary, SupernodeId};

/// `cost / |E|`.
pub fn relative_size(s: &HierarchicalSummary, g: &InputGraph) -> Result<f64> {
    if g.edge_count() == 0 {
        return domain("relative size is undefined for a graph without edges");
    }
    Ok(s.cost() as f64 / g.edge_count() as f64)
}

/// `(|P| + |C+| + |C-| + |H*|) / |E|` for a flat encoding, where `H*` holds one
/// membership edge per subnode of every non-singleton supernode.
pub fn flat_relative_size(flat: &FlatEncoding, g: &InputGraph) -> Result<f64> {
    if g.edge_count() == 0 {
        return domain("relative size is undefined for a graph without edges");
    }
    Ok(flat.cost() as f64 / g.edge_count() as f64)
}

/// Fractions of p-, n- and h-edges in the encoding cost.
pub fn edge_composition(s: &HierarchicalSummary) -> Result<(f64, f64, f64)> {
    let total = s.cost();
    if total == 0 {
        return domain("composition is undefined for a zero-cost summary");
    }
    let t = total as f64;
    Ok((s.p_count() as f64 / t, s.n_count() as f64 / t, s.h_count() as f64 / t))
}

/// Shortest path length in `g` between any subnode of root `a` and any
/// subnode of root `b`; `None` when disconnected.
pub fn super_distance(
    s: &HierarchicalSummary,
    g: &InputGraph,
    a: SupernodeId,
    b: SupernodeId,
) -> Result<Option<usize>> {
    if a == b || !s.forest.is_root(a) || !s.forest.is_root(b) {
        return domain(format!("super distance needs two distinct roots, got {a} and {b}"));
    }
    let mut target = vec![false; g.node_count()];
    s.forest.for_each_leaf(b, |u| target[u as usize] = true);
    let mut dist = vec![usize::MAX; g.node_count()];
    let mut queue = VecDeque::new();
    s.forest.for_each_leaf(a, |u| {
        dist[u as usize] = 0;
        queue.push_back(u);
    });
    while let Some(u) = queue.pop_front() {
        let d = dist[u as usize];
        for &w in g.adj(u) {
            if dist[w as usize] == usize::MAX {
                if target[w as usize] {
                    return Ok(Some(d + 1));
                }
                dist[w as usize] = d + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeStats {
    pub max_height: usize,
    pub mean_leaf_depth: f64,
    pub root_count: usize,
}

pub fn tree_stats(s: &HierarchicalSummary) -> TreeStats {
    let n = s.subnode_count();
    let mut max_height = 0;
    let mut depth_sum = 0usize;
    let mut root_count = 0;
    for r in s.forest.roots() {
        root_count += 1;
        let mut stack = vec![(r, 0usize)];
        while let Some((x, d)) = stack.pop() {
            max_height = max_height.max(d);
            if s.forest.is_leaf(x) {
                depth_sum += d;
            }
            stack.extend(s.forest.children(x).iter().map(|&c| (c, d + 1)));
        }
    }
    TreeStats {
        max_height,
        mean_leaf_depth: if n == 0 { 0.0 } else { depth_sum as f64 / n as f64 },
        root_count,
    }
}
