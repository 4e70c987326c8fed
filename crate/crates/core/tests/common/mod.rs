#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use slugger_core::synth::{caveman_graph, er_graph, theorem_graph, TheoremSpec};
use slugger_core::{HierarchicalSummary, InputGraph, NodeId, SupernodeId};

pub fn path(n: usize) -> InputGraph {
    InputGraph::from_edges(n, (1..n as NodeId).map(|v| (v - 1, v))).unwrap()
}

pub fn star(n: usize) -> InputGraph {
    InputGraph::from_edges(n, (1..n as NodeId).map(|v| (0, v))).unwrap()
}

pub fn clique(n: usize) -> InputGraph {
    let n32 = n as NodeId;
    InputGraph::from_edges(n, (0..n32).flat_map(|u| (u + 1..n32).map(move |v| (u, v)))).unwrap()
}

/// The fixture corpus, smallest first.
pub fn corpus() -> Vec<(&'static str, InputGraph)> {
    vec![
        ("theorem(4,1)", theorem_graph(TheoremSpec { n: 4, k: 1 }).unwrap()),
        ("path(40)", path(40)),
        ("star(30)", star(30)),
        ("clique(12)", clique(12)),
        ("theorem(16,2)", theorem_graph(TheoremSpec { n: 16, k: 2 }).unwrap()),
        ("theorem(32,3)", theorem_graph(TheoremSpec { n: 32, k: 3 }).unwrap()),
        ("caveman(20,10)", caveman_graph(20, 10, 1).unwrap()),
        ("er(200,0.05)", er_graph(200, 0.05, 2).unwrap()),
        ("er(1000,0.01)", er_graph(1000, 0.01, 3).unwrap()),
    ]
}

pub fn corpus_graph(name: &str) -> InputGraph {
    corpus().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// Subnodes under `x`, collected by walking children.
pub fn leaf_set(s: &HierarchicalSummary, x: SupernodeId) -> Vec<NodeId> {
    let f = s.forest();
    let mut out = Vec::new();
    let mut stack = vec![x];
    while let Some(y) = stack.pop() {
        if f.is_leaf(y) {
            out.push(y);
        } else {
            stack.extend(f.children(y).iter().copied());
        }
    }
    out
}

/// Independent expansion: every super-edge contributes its sign once to each
/// distinct unordered subnode pair `{u, v}`, `u != v`, with `u` under one
/// endpoint and `v` under the other.
pub fn expand(s: &HierarchicalSummary) -> HashMap<(NodeId, NodeId), i32> {
    let mut net = HashMap::new();
    for (a, b, sign) in s.edges().iter() {
        let la = leaf_set(s, a);
        let lb = leaf_set(s, b);
        let mut block = HashSet::new();
        for &u in &la {
            for &v in &lb {
                if u != v {
                    block.insert((u.min(v), u.max(v)));
                }
            }
        }
        for p in block {
            *net.entry(p).or_insert(0) += sign.value();
        }
    }
    net
}

/// Edge list the summary represents, or the first pair with a net count
/// outside {0, 1}.
pub fn oracle_edges(s: &HierarchicalSummary) -> Result<Vec<(NodeId, NodeId)>, (NodeId, NodeId, i32)> {
    let net = expand(s);
    let mut bad: Vec<_> = net.iter().filter(|(_, &c)| c != 0 && c != 1).collect();
    bad.sort();
    if let Some((&(u, v), &c)) = bad.first() {
        return Err((u, v, c));
    }
    let mut edges: Vec<_> = net.into_iter().filter(|&(_, c)| c == 1).map(|(p, _)| p).collect();
    edges.sort_unstable();
    Ok(edges)
}

pub fn oracle_graph(s: &HierarchicalSummary) -> InputGraph {
    InputGraph::from_edges(s.subnode_count(), oracle_edges(s).expect("valid net counts")).unwrap()
}

pub fn represents(s: &HierarchicalSummary, g: &InputGraph) -> bool {
    s.subnode_count() == g.node_count() && oracle_edges(s).is_ok_and(|e| e == g.edges().collect::<Vec<_>>())
}

/// Tree height by explicit recursion over children.
pub fn height(s: &HierarchicalSummary, x: SupernodeId) -> usize {
    s.forest().children(x).iter().map(|&c| 1 + height(s, c)).max().unwrap_or(0)
}

/// Reference traversals over plain adjacency lists.
pub fn dfs_recursive(g: &InputGraph, start: NodeId) -> Vec<NodeId> {
    fn go(g: &InputGraph, u: NodeId, seen: &mut [bool], out: &mut Vec<NodeId>) {
        seen[u as usize] = true;
        out.push(u);
        for &w in g.adj(u) {
            if !seen[w as usize] {
                go(g, w, seen, out);
            }
        }
    }
    let mut seen = vec![false; g.node_count()];
    let mut out = Vec::new();
    go(g, start, &mut seen, &mut out);
    out
}

pub fn bfs_levels(g: &InputGraph, start: NodeId) -> HashMap<NodeId, usize> {
    let mut dist = HashMap::from([(start, 0)]);
    let mut level = vec![start];
    let mut d = 0;
    while !level.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for u in level {
            for &w in g.adj(u) {
                if !dist.contains_key(&w) {
                    dist.insert(w, d);
                    next.push(w);
                }
            }
        }
        level = next;
    }
    dist
}

/// Textbook power iteration, written out independently.
pub fn pagerank_reference(g: &InputGraph, d: f64, iters: usize) -> Vec<f64> {
    let n = g.node_count();
    let mut r = vec![1.0 / n as f64; n];
    for _ in 0..iters {
        let mut next = vec![0.0; n];
        for u in 0..n {
            let deg = g.adj(u as NodeId).len();
            for &w in g.adj(u as NodeId) {
                next[w as usize] += r[u] / deg as f64;
            }
        }
        let s: f64 = next.iter().sum();
        r = next.iter().map(|x| d * x + (1.0 - d * s) / n as f64).collect();
    }
    r
}
