//! Graph algorithms that touch the graph only through a neighbor oracle, so
//! they run unchanged on an input graph or on a summary (via partial
//! decompression).

use std::collections::HashMap;
use std::time::Instant;

use rand::seq::index;

use crate::error::{domain, Result};
use crate::graph::{InputGraph, NodeId};
use crate::rng;
use crate::summary::{neighbors_of, tree_stats, HierarchicalSummary};

/// Source of sorted neighbor lists.
pub trait NeighborOracle {
    fn node_count(&self) -> usize;
    /// Neighbors of `v` in ascending order.
    fn neighbors(&self, v: NodeId) -> Result<Vec<NodeId>>;
}

impl NeighborOracle for InputGraph {
    fn node_count(&self) -> usize {
        InputGraph::node_count(self)
    }

    fn neighbors(&self, v: NodeId) -> Result<Vec<NodeId>> {
        InputGraph::neighbors(self, v).map(<[NodeId]>::to_vec)
    }
}

impl NeighborOracle for HierarchicalSummary {
    fn node_count(&self) -> usize {
        self.subnode_count()
    }

    fn neighbors(&self, v: NodeId) -> Result<Vec<NodeId>> {
        neighbors_of(self, v)
    }
}

fn check_start<O: NeighborOracle + ?Sized>(g: &O, start: NodeId) -> Result<()> {
    if start as usize >= g.node_count() {
        return domain(format!("start node {start} out of range 0..{}", g.node_count()));
    }
    Ok(())
}

/// Preorder depth-first traversal from `start`, visiting neighbors in
/// ascending id. Same order as the recursive formulation.
pub fn dfs<O: NeighborOracle + ?Sized>(g: &O, start: NodeId) -> Result<Vec<NodeId>> {
    check_start(g, start)?;
    let mut seen = vec![false; g.node_count()];
    let mut order = vec![start];
    seen[start as usize] = true;
    // Each frame holds a node's neighbor list and the next index to try.
    let mut stack = vec![(g.neighbors(start)?, 0usize)];
    while let Some((list, next)) = stack.last_mut() {
        let Some(&w) = list.get(*next) else {
            stack.pop();
            continue;
        };
        *next += 1;
        if !seen[w as usize] {
            seen[w as usize] = true;
            order.push(w);
            stack.push((g.neighbors(w)?, 0));
        }
    }
    Ok(order)
}

/// Hop distances from `start`; unreachable nodes are absent.
pub fn bfs<O: NeighborOracle + ?Sized>(g: &O, start: NodeId) -> Result<HashMap<NodeId, usize>> {
    check_start(g, start)?;
    let mut dist = HashMap::from([(start, 0)]);
    let mut frontier = std::collections::VecDeque::from([start]);
    while let Some(u) = frontier.pop_front() {
        let du = dist[&u];
        for w in g.neighbors(u)? {
            dist.entry(w).or_insert_with(|| {
                frontier.push_back(w);
                du + 1
            });
        }
    }
    Ok(dist)
}

#[derive(Clone, Debug, PartialEq)]
pub struct PageRankVector {
    pub scores: Vec<f64>,
    pub damping: f64,
    pub iterations: usize,
}

impl PageRankVector {
    pub fn sum(&self) -> f64 {
        self.scores.iter().sum()
    }

    /// The `k` highest-scoring nodes, ties broken by smaller id.
    pub fn top(&self, k: usize) -> Vec<(NodeId, f64)> {
        let mut ranked: Vec<_> = self.scores.iter().enumerate().map(|(v, &r)| (v as NodeId, r)).collect();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        ranked.truncate(k);
        ranked
    }
}

/// Power iteration with uniform redistribution of leaked mass. `observe`
/// sees the vector after every iteration.
pub fn pagerank_observed<O: NeighborOracle + ?Sized>(
    g: &O,
    damping: f64,
    iters: usize,
    mut observe: impl FnMut(usize, &[f64]),
) -> Result<PageRankVector> {
    if !(damping > 0.0 && damping < 1.0) {
        return domain(format!("damping {damping} not in (0, 1)"));
    }
    if iters == 0 {
        return domain("pagerank needs at least one iteration");
    }
    let n = g.node_count();
    let uniform = if n == 0 { 0.0 } else { 1.0 / n as f64 };
    let mut new = vec![uniform; n];
    for t in 1..=iters {
        let old = std::mem::replace(&mut new, vec![0.0; n]);
        for u in 0..n as NodeId {
            let list = g.neighbors(u)?;
            if list.is_empty() {
                continue;
            }
            let share = old[u as usize] / list.len() as f64;
            for w in list {
                new[w as usize] += share;
            }
        }
        let total: f64 = new.iter().sum();
        let leak = (1.0 - damping * total) * uniform;
        for r in &mut new {
            *r = damping * *r + leak;
        }
        observe(t, &new);
    }
    Ok(PageRankVector { scores: new, damping, iterations: iters })
}

pub fn pagerank<O: NeighborOracle + ?Sized>(g: &O, damping: f64, iters: usize) -> Result<PageRankVector> {
    pagerank_observed(g, damping, iters, |_, _| {})
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QueryBench {
    pub mean_micros: f64,
    pub mean_leaf_depth: f64,
    pub queries: usize,
}

/// Nodes drawn for [`neighbor_query_bench`]: `sample` distinct ids if the
/// graph is large enough, otherwise every id.
pub fn bench_sample(node_count: usize, sample: usize, seed: u64) -> Vec<NodeId> {
    let k = sample.min(node_count);
    let mut rng = rng::stream(seed, rng::TAG_QUERY, node_count as u64, k as u64);
    index::sample(&mut rng, node_count, k).into_iter().map(|v| v as NodeId).collect()
}

/// Mean wall time of one neighbor query over a seeded sample of subnodes.
pub fn neighbor_query_bench(s: &HierarchicalSummary, sample: usize, seed: u64) -> Result<QueryBench> {
    if sample == 0 {
        return domain("sample must be at least 1");
    }
    let nodes = bench_sample(s.subnode_count(), sample, seed);
    let started = Instant::now();
    let mut sink = 0usize;
    for &v in &nodes {
        sink = sink.wrapping_add(neighbors_of(s, v)?.len());
    }
    let elapsed = started.elapsed().as_secs_f64();
    std::hint::black_box(sink);
    let mean_micros = if nodes.is_empty() { 0.0 } else { elapsed * 1e6 / nodes.len() as f64 };
    Ok(QueryBench {
        mean_micros,
        mean_leaf_depth: tree_stats(s).mean_leaf_depth,
        queries: nodes.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> InputGraph {
        InputGraph::from_edges(4, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn traversals_on_a_path() {
        let s = HierarchicalSummary::trivial(&path3());
        assert_eq!(dfs(&s, 0).unwrap(), vec![0, 1, 2]);
        let d = bfs(&s, 0).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!((d[&0], d[&1], d[&2]), (0, 1, 2));
        assert!(!d.contains_key(&3));
        assert!(dfs(&s, 4).is_err());
        assert!(bfs(&s, 4).is_err());
    }

    #[test]
    fn dfs_is_preorder_with_backtracking() {
        // 0-1, 1-3, 0-2, 2-3: from 0 go 1, then 3, then 2 via 3.
        let g = InputGraph::from_edges(4, [(0, 1), (1, 3), (0, 2), (2, 3)]).unwrap();
        assert_eq!(dfs(&g, 0).unwrap(), vec![0, 1, 3, 2]);
        let star = InputGraph::from_edges(4, [(0, 3), (0, 1), (0, 2)]).unwrap();
        assert_eq!(dfs(&star, 0).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(dfs(&star, 2).unwrap(), vec![2, 0, 1, 3]);
    }

    #[test]
    fn pagerank_symmetric_graphs() {
        let k2 = InputGraph::from_edges(2, [(0, 1)]).unwrap();
        pagerank_observed(&k2, 0.85, 10, |_, r| {
            assert!((r[0] - 0.5).abs() < 1e-15 && (r[1] - 0.5).abs() < 1e-15);
        })
        .unwrap();
        let c4 = InputGraph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let pr = pagerank(&c4, 0.85, 30).unwrap();
        assert!(pr.scores.iter().all(|&r| (r - 0.25).abs() < 1e-15));
    }

    #[test]
    fn pagerank_mass_with_dangling_nodes() {
        let g = InputGraph::from_edges(5, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let pr = pagerank_observed(&g, 0.85, 30, |_, r| {
            assert!((r.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        })
        .unwrap();
        assert_eq!(pr.top(1)[0].0, 0);
        assert!(pagerank(&g, 1.0, 3).is_err());
        assert!(pagerank(&g, 0.5, 0).is_err());
    }

    #[test]
    fn bench_sample_is_seeded() {
        assert_eq!(bench_sample(100, 10, 7), bench_sample(100, 10, 7));
        assert_eq!(bench_sample(3, 10, 7).len(), 3);
        let s = HierarchicalSummary::trivial(&path3());
        let b = neighbor_query_bench(&s, 5, 1).unwrap();
        assert_eq!(b.mean_leaf_depth, 0.0);
        assert_eq!(b.queries, 4);
        assert!(neighbor_query_bench(&s, 0, 1).is_err());
    }
}
