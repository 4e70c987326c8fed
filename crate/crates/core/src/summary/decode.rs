use std::collections::{HashMap, HashSet};

use crate::error::{domain, Error, Result};
use crate::graph::{InputGraph, NodeId};
use crate::summary::{HierarchicalSummary, SupernodeId};

fn pair_key(u: NodeId, v: NodeId) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    ((a as u64) << 32) | b as u64
}

fn unpack(key: u64) -> (NodeId, NodeId) {
    ((key >> 32) as NodeId, key as NodeId)
}

/// Net p-minus-n count of every subnode pair touched by some super-edge,
/// obtained by expanding each edge into its block of subnode pairs.
fn net_counts(s: &HierarchicalSummary) -> HashMap<u64, i32> {
    let mut leaves: HashMap<SupernodeId, Vec<NodeId>> = HashMap::new();
    let mut net: HashMap<u64, i32> = HashMap::new();
    for (a, b, sign) in s.edges.iter() {
        for x in [a, b] {
            leaves.entry(x).or_insert_with(|| s.forest.leaves(x));
        }
        let delta = sign.value();
        let la = &leaves[&a];
        if a == b {
            for (i, &u) in la.iter().enumerate() {
                for &v in &la[i + 1..] {
                    *net.entry(pair_key(u, v)).or_insert(0) += delta;
                }
            }
        } else {
            let lb = &leaves[&b];
            // A nested edge covers each pair of the inner endpoint once, and
            // the diagonal u == v not at all.
            let nested = s.forest.is_within(a, b) || s.forest.is_within(b, a);
            let (outer, inner) = if la.len() >= lb.len() { (la, lb) } else { (lb, la) };
            let inner_set: HashSet<NodeId> = if nested {
                inner.iter().copied().collect()
            } else {
                HashSet::new()
            };
            for &u in outer {
                let u_inner = inner_set.contains(&u);
                for &v in inner {
                    if u_inner && u >= v {
                        continue;
                    }
                    *net.entry(pair_key(u, v)).or_insert(0) += delta;
                }
            }
        }
    }
    net
}

/// Reconstructs the input graph. Fails on the first pair (in ascending
/// order) whose net count is outside `{0, 1}`.
pub fn decode(s: &HierarchicalSummary) -> Result<InputGraph> {
    let net = net_counts(s);
    let mut bad: Vec<_> = net.iter().filter(|(_, &c)| !(0..=1).contains(&c)).collect();
    bad.sort_unstable();
    if let Some((&key, &c)) = bad.first() {
        let (u, v) = unpack(key);
        return Err(Error::InvalidSummary { u, v, net: c });
    }
    let edges = net.into_iter().filter(|&(_, c)| c == 1).map(|(k, _)| unpack(k));
    InputGraph::from_edges(s.subnode_count(), edges)
}

/// Neighbors of subnode `v` by partial decompression: walk `v`'s ancestor
/// chain and count, for every subnode, the signed super-edges that cover its
/// pair with `v`. Returns the sorted subnodes whose count is exactly one.
pub fn neighbors_of(s: &HierarchicalSummary, v: NodeId) -> Result<Vec<NodeId>> {
    if v as usize >= s.subnode_count() {
        return domain(format!("subnode {v} out of range 0..{}", s.subnode_count()));
    }
    let chain = s.forest.ancestors(v);
    let mut count: HashMap<NodeId, i32> = HashMap::new();
    for (level, &x) in chain.iter().enumerate() {
        for (y, sign) in s.edges.incident(x) {
            // An edge joining two ancestors of v covers (u, v) iff u lies in the
            // larger endpoint. It is counted once, from its lower endpoint.
            if let Some(pos) = chain.iter().position(|&c| c == y) {
                if pos < level {
                    continue;
                }
            }
            let delta = sign.value();
            s.forest.for_each_leaf(y, |u| *count.entry(u).or_insert(0) += delta);
        }
    }
    let mut out: Vec<_> = count
        .into_iter()
        .filter(|&(u, c)| u != v && c == 1)
        .map(|(u, _)| u)
        .collect();
    out.sort_unstable();
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Net count outside `{0, 1}`.
    InvalidNet { u: NodeId, v: NodeId, net: i32 },
    /// Edge of the reference graph that the summary does not produce.
    Missing { u: NodeId, v: NodeId },
    /// Edge produced by the summary that the reference graph lacks.
    Extra { u: NodeId, v: NodeId },
    /// Summary and graph disagree on the number of subnodes.
    NodeCount { summary: usize, graph: usize },
    /// Forest or edge-set inconsistency.
    Structure(String),
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::InvalidNet { u, v, net } => write!(f, "pair ({u}, {v}) has net count {net}"),
            Violation::Missing { u, v } => write!(f, "missing subedge ({u}, {v})"),
            Violation::Extra { u, v } => write!(f, "spurious subedge ({u}, {v})"),
            Violation::NodeCount { summary, graph } => {
                write!(f, "summary has {summary} subnodes, graph has {graph}")
            }
            Violation::Structure(msg) => write!(f, "structure: {msg}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LosslessReport {
    /// Total number of violations found.
    pub violation_count: usize,
    /// The first violations in ascending pair order, at most `LIMIT`.
    pub violations: Vec<Violation>,
}

impl LosslessReport {
    pub const LIMIT: usize = 20;

    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn push(&mut self, v: Violation) {
        self.violation_count += 1;
        if self.violations.len() < Self::LIMIT {
            self.violations.push(v);
        }
    }
}

/// Checks validity (every net count in `{0, 1}`) and exact agreement with `g`.
pub fn verify_lossless(s: &HierarchicalSummary, g: &InputGraph) -> LosslessReport {
    let mut report = LosslessReport::default();
    if let Err(e) = s.check_structure() {
        report.push(Violation::Structure(e.to_string()));
        return report;
    }
    if s.subnode_count() != g.node_count() {
        report.push(Violation::NodeCount {
            summary: s.subnode_count(),
            graph: g.node_count(),
        });
        return report;
    }
    let net = net_counts(s);
    let mut problems: Vec<(u64, Violation)> = Vec::new();
    for (&key, &c) in &net {
        let (u, v) = unpack(key);
        if !(0..=1).contains(&c) {
            problems.push((key, Violation::InvalidNet { u, v, net: c }));
        } else if c == 1 && !g.has_edge(u, v) {
            problems.push((key, Violation::Extra { u, v }));
        }
    }
    for (u, v) in g.edges() {
        let key = pair_key(u, v);
        // Out-of-range counts were already reported above.
        if net.get(&key).copied().unwrap_or(0) == 0 {
            problems.push((key, Violation::Missing { u, v }));
        }
    }
    problems.sort_by_key(|(k, _)| *k);
    for (_, v) in problems {
        report.push(v);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summary::Sign;

    #[test]
    fn trivial_round_trip() {
        let g = InputGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let s = HierarchicalSummary::trivial(&g);
        assert_eq!(decode(&s).unwrap(), g);
        assert_eq!(neighbors_of(&s, 1).unwrap(), vec![0, 2]);
        assert!(verify_lossless(&s, &g).passed());
        assert!(neighbors_of(&s, 3).is_err());
    }

    /// The final state of the worked example: p-edge ({0,1,2,3}, {5}) plus
    /// n-edge ({2,3}, {5}), with {2,3} nested in {0,1,2,3}.
    fn example_final_state() -> HierarchicalSummary {
        let mut s = HierarchicalSummary::empty(6);
        let inner = s.merge_roots(&[2, 3]).unwrap();
        let outer = s.merge_roots(&[0, 1, inner]).unwrap();
        s.set_edge(outer, 5, Some(Sign::Pos)).unwrap();
        s.set_edge(inner, 5, Some(Sign::Neg)).unwrap();
        s
    }

    #[test]
    fn nested_negative_edge_removes_pairs() {
        let s = example_final_state();
        let n5 = neighbors_of(&s, 5).unwrap();
        assert_eq!(n5, vec![0, 1]);
        let g = decode(&s).unwrap();
        assert!(g.has_edge(0, 5) && g.has_edge(1, 5));
        assert!(!g.has_edge(2, 5) && !g.has_edge(3, 5));
        for v in 0..6 {
            assert_eq!(neighbors_of(&s, v).unwrap(), g.adj(v));
        }
    }

    #[test]
    fn edges_between_ancestors_count_once() {
        // (A, {0}) where {0} is inside A = {0, 1, 2}: covers (0,1) and (0,2) only.
        let mut s = HierarchicalSummary::empty(3);
        let a = s.merge_roots(&[0, 1, 2]).unwrap();
        s.set_edge(a, 0, Some(Sign::Pos)).unwrap();
        let g = decode(&s).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2)]);
        for v in 0..3 {
            assert_eq!(neighbors_of(&s, v).unwrap(), g.adj(v));
        }
    }

    #[test]
    fn nested_edge_with_internal_inner_endpoint() {
        // (M, B) with B = {1, 2} inside M = {0, 1, 2}: (1,2) is covered once.
        let mut s = HierarchicalSummary::empty(3);
        let b = s.merge_roots(&[1, 2]).unwrap();
        let m = s.merge_roots(&[0, b]).unwrap();
        s.set_edge(m, b, Some(Sign::Pos)).unwrap();
        let g = decode(&s).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
        for v in 0..3 {
            assert_eq!(neighbors_of(&s, v).unwrap(), g.adj(v));
        }
    }

    #[test]
    fn invalid_net_is_reported() {
        let mut s = HierarchicalSummary::empty(3);
        let a = s.merge_roots(&[0, 1]).unwrap();
        s.set_edge(a, 2, Some(Sign::Pos)).unwrap();
        s.set_edge(0, 2, Some(Sign::Pos)).unwrap();
        match decode(&s) {
            Err(Error::InvalidSummary { u: 0, v: 2, net: 2 }) => {}
            other => panic!("unexpected {other:?}"),
        }
        let g = InputGraph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let report = verify_lossless(&s, &g);
        assert_eq!(report.violations, vec![Violation::InvalidNet { u: 0, v: 2, net: 2 }]);
    }

    #[test]
    fn removed_edge_is_identified() {
        let g = InputGraph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut s = HierarchicalSummary::trivial(&g);
        s.set_edge(1, 2, None).unwrap();
        let report = verify_lossless(&s, &g);
        assert!(!report.passed());
        assert_eq!(report.violations, vec![Violation::Missing { u: 1, v: 2 }]);
    }
}
