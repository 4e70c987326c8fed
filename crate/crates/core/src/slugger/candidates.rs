use std::collections::BTreeMap;

use rand::seq::SliceRandom;

use crate::graph::{InputGraph, NodeId};
use crate::rng::{self, splitmix64};
use crate::slugger::SluggerConfig;
use crate::summary::{HierarchicalSummary, SupernodeId};

/// Seeded per-subnode hash.
pub fn subnode_hash(hash_seed: u64, w: NodeId) -> u64 {
    splitmix64(hash_seed ^ splitmix64(w as u64))
}

/// Hash seed for shingle round `round` of iteration `t`.
pub fn round_seed(seed: u64, t: usize, round: usize) -> u64 {
    rng::derive_seed(seed, rng::TAG_HASH, t as u64, round as u64)
}

/// Min-hash over the closed neighborhoods of every subnode under `root`.
pub fn shingle(s: &HierarchicalSummary, g: &InputGraph, root: SupernodeId, hash_seed: u64) -> u64 {
    let mut best = u64::MAX;
    s.forest().for_each_leaf(root, |u| {
        best = best.min(subnode_hash(hash_seed, u));
        for &w in g.adj(u) {
            best = best.min(subnode_hash(hash_seed, w));
        }
    });
    best
}

fn leaf_shingles(g: &InputGraph, hash_seed: u64) -> Vec<u64> {
    let h: Vec<u64> = (0..g.node_count() as NodeId).map(|w| subnode_hash(hash_seed, w)).collect();
    (0..g.node_count())
        .map(|u| g.adj(u as NodeId).iter().fold(h[u], |m, &w| m.min(h[w as usize])))
        .collect()
}

/// Partitions the current roots into candidate sets: by shingle for up to
/// `max_shingle_rounds` rounds (first round splits everything, later rounds
/// only oversized groups), then by random halving until every set fits.
/// Singleton sets are dropped.
pub fn generate_candidates(
    s: &HierarchicalSummary,
    g: &InputGraph,
    t: usize,
    cfg: &SluggerConfig,
) -> Vec<Vec<SupernodeId>> {
    let roots = s.roots();
    let mut groups = vec![roots];
    for round in 0..cfg.max_shingle_rounds {
        if round > 0 && groups.iter().all(|grp| grp.len() <= cfg.max_candidate_size) {
            break;
        }
        let leaf = leaf_shingles(g, round_seed(cfg.seed, t, round));
        let mut next = Vec::with_capacity(groups.len());
        for grp in groups {
            if round > 0 && grp.len() <= cfg.max_candidate_size {
                next.push(grp);
                continue;
            }
            let mut by_value: BTreeMap<u64, Vec<SupernodeId>> = BTreeMap::new();
            for r in grp {
                let mut v = u64::MAX;
                s.forest().for_each_leaf(r, |u| v = v.min(leaf[u as usize]));
                by_value.entry(v).or_default().push(r);
            }
            next.extend(by_value.into_values());
        }
        groups = next;
    }

    let mut rng = rng::stream(cfg.seed, rng::TAG_SPLIT, t as u64, 0);
    let mut out = Vec::with_capacity(groups.len());
    let mut stack: Vec<Vec<SupernodeId>> = groups.into_iter().rev().collect();
    while let Some(mut grp) = stack.pop() {
        if grp.len() <= cfg.max_candidate_size {
            if grp.len() > 1 {
                out.push(grp);
            }
            continue;
        }
        grp.shuffle(&mut rng);
        let right = grp.split_off(grp.len() / 2);
        stack.push(right);
        stack.push(grp);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isolated_node_hashes_itself() {
        let g = InputGraph::from_edges(3, []).unwrap();
        let s = HierarchicalSummary::trivial(&g);
        assert_eq!(shingle(&s, &g, 1, 9), subnode_hash(9, 1));
    }

    #[test]
    fn disjoint_cliques_group_together() {
        let mut edges = Vec::new();
        for base in [0, 5] {
            for i in 0..5 {
                for j in i + 1..5 {
                    edges.push((base + i, base + j));
                }
            }
        }
        let g = InputGraph::from_edges(10, edges).unwrap();
        let s = HierarchicalSummary::trivial(&g);
        let cfg = SluggerConfig { max_shingle_rounds: 1, ..SluggerConfig::default() };
        let mut sets = generate_candidates(&s, &g, 1, &cfg);
        sets.sort();
        assert_eq!(sets, vec![vec![0, 1, 2, 3, 4], vec![5, 6, 7, 8, 9]]);
    }

    #[test]
    fn size_cap_and_determinism() {
        let g = InputGraph::from_edges(50, []).unwrap();
        let s = HierarchicalSummary::trivial(&g);
        let cfg = SluggerConfig { max_candidate_size: 4, ..SluggerConfig::default() };
        let a = generate_candidates(&s, &g, 3, &cfg);
        assert!(a.iter().all(|d| d.len() <= 4 && d.len() >= 2));
        assert_eq!(a, generate_candidates(&s, &g, 3, &cfg));
        // Shingle splitting of a star still respects the cap.
        let star = InputGraph::from_edges(40, (1..40).map(|v| (0, v))).unwrap();
        let s = HierarchicalSummary::trivial(&star);
        let sets = generate_candidates(&s, &star, 1, &cfg);
        assert!(sets.iter().map(Vec::len).sum::<usize>() <= 40);
        assert!(sets.iter().all(|d| d.len() <= 4));
    }
}
