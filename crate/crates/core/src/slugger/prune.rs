use std::collections::{BTreeMap, HashMap, VecDeque};

use crate::error::Result;
use crate::graph::InputGraph;
use crate::summary::{root_pair_costs, HierarchicalSummary, Sign, SupernodeId};

/// Cost after each pruning substep.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PruneStats {
    pub cost_before: usize,
    pub after_splice: usize,
    pub after_push_down: usize,
    pub after_flat: usize,
    pub spliced: usize,
    pub pushed_down: usize,
    pub flattened: usize,
}

/// Step 1: deletes every internal supernode without incident edges; its
/// children move up. Returns the number of deleted supernodes.
pub fn splice_edgeless(s: &mut HierarchicalSummary) -> Result<usize> {
    let mut removed = 0;
    let mut queue: VecDeque<SupernodeId> = s.roots().into_iter().collect();
    while let Some(x) = queue.pop_front() {
        let f = s.forest();
        if f.is_leaf(x) {
            continue;
        }
        if s.edges().degree(x) == 0 {
            queue.extend(s.splice_out(x)?);
            removed += 1;
        } else {
            queue.extend(f.children(x).iter().copied());
        }
    }
    Ok(removed)
}

/// Step 2: a root whose only edge is a single non-loop `(A, B)` is deleted
/// and the edge is pushed to its children (cancelling opposite edges).
/// Roots where a child already carries the same sign on that pair are left
/// alone. Returns the number of deleted roots.
pub fn push_down_single_edges(s: &mut HierarchicalSummary) -> Result<usize> {
    let mut removed = 0;
    let mut queue: VecDeque<SupernodeId> = s.roots().into_iter().collect();
    while let Some(a) = queue.pop_front() {
        if !s.forest().is_root(a) || s.forest().is_leaf(a) || s.edges().degree(a) != 1 {
            continue;
        }
        let (b, sign) = s.edges().incident(a).next().expect("degree is one");
        if b == a {
            continue;
        }
        let kids = s.forest().children(a).to_vec();
        // Leaf self-loops cover no subnode pair and are dropped.
        let targets: Vec<SupernodeId> =
            kids.iter().copied().filter(|&c| !(c == b && s.forest().is_leaf(c))).collect();
        if targets.iter().any(|&c| s.edges().get(c, b) == Some(sign)) {
            continue;
        }
        s.set_edge(a, b, None)?;
        for c in targets {
            s.add_edge(c, b, sign)?;
        }
        s.splice_out(a)?;
        removed += 1;
        queue.extend(kids);
    }
    Ok(removed)
}

/// Step 3: per root pair, replaces the edges between the two trees by the
/// cheaper flat encoding when it beats the current cost. Returns the number
/// of replaced root pairs.
pub fn flatten_root_pairs(s: &mut HierarchicalSummary, g: &InputGraph) -> Result<usize> {
    let root_of: Vec<SupernodeId> = {
        let f = s.forest();
        let mut r = vec![0; f.id_bound()];
        for root in f.roots() {
            for x in f.subtree(root) {
                r[x as usize] = root;
            }
        }
        r
    };
    let key = |a: SupernodeId, b: SupernodeId| if a <= b { (a, b) } else { (b, a) };
    let mut subedges: HashMap<(SupernodeId, SupernodeId), Vec<(u32, u32)>> = HashMap::new();
    for (u, v) in g.edges() {
        subedges.entry(key(root_of[u as usize], root_of[v as usize])).or_default().push((u, v));
    }
    let current: BTreeMap<_, _> = root_pair_costs(s);
    let mut replaced = 0;
    for (&(a, b), &cur) in &current {
        let present = subedges.get(&(a, b)).map_or(&[][..], Vec::as_slice);
        let e = present.len();
        let (sa, sb) = (s.forest().subtree_size(a) as usize, s.forest().subtree_size(b) as usize);
        let total = if a == b { sa * (sa - 1) / 2 } else { sa * sb };
        let dense = total - e + 1;
        let m = if e == 0 { 0 } else { e.min(dense) };
        if m >= cur {
            continue;
        }
        let doomed: Vec<(SupernodeId, SupernodeId)> = s
            .forest()
            .subtree(a)
            .into_iter()
            .flat_map(|x| s.edges().incident(x).map(move |(y, _)| (x, y)).collect::<Vec<_>>())
            .filter(|&(x, y)| root_of[y as usize] == b && (a != b || x <= y))
            .collect();
        for (x, y) in doomed {
            s.set_edge(x, y, None)?;
        }
        if e > 0 && e <= dense {
            for &(u, v) in present {
                s.set_edge(u, v, Some(Sign::Pos))?;
            }
        } else if e > dense {
            s.set_edge(a, b, Some(Sign::Pos))?;
            let have: std::collections::HashSet<(u32, u32)> = present.iter().copied().collect();
            let la = s.forest().leaves(a);
            let lb = s.forest().leaves(b);
            for (i, &u) in la.iter().enumerate() {
                let others = if a == b { &la[i + 1..] } else { &lb[..] };
                for &v in others {
                    let p = if u < v { (u, v) } else { (v, u) };
                    if !have.contains(&p) {
                        s.set_edge(p.0, p.1, Some(Sign::Neg))?;
                    }
                }
            }
        }
        replaced += 1;
    }
    Ok(replaced)
}

/// All three substeps in order, then dense renumbering.
pub fn prune(s: &mut HierarchicalSummary, g: &InputGraph) -> Result<PruneStats> {
    let mut st = PruneStats { cost_before: s.cost(), ..PruneStats::default() };
    st.spliced = splice_edgeless(s)?;
    st.after_splice = s.cost();
    st.pushed_down = push_down_single_edges(s)?;
    st.after_push_down = s.cost();
    st.flattened = flatten_root_pairs(s, g)?;
    st.after_flat = s.cost();
    s.compact();
    Ok(st)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::summary::verify_lossless;

    #[test]
    fn spurious_node_is_spliced() {
        let g = InputGraph::from_edges(3, []).unwrap();
        let mut s = HierarchicalSummary::empty(3);
        s.merge_roots(&[0, 1]).unwrap();
        assert_eq!(splice_edgeless(&mut s).unwrap(), 1);
        assert_eq!(s.cost(), 0);
        assert!(verify_lossless(&s, &g).passed());
    }

    #[test]
    fn single_edge_is_pushed_down() {
        let g = InputGraph::from_edges(3, [(0, 2), (1, 2)]).unwrap();
        let mut s = HierarchicalSummary::empty(3);
        let a = s.merge_roots(&[0, 1]).unwrap();
        s.set_edge(a, 2, Some(Sign::Pos)).unwrap();
        assert_eq!(s.cost(), 3);
        assert_eq!(push_down_single_edges(&mut s).unwrap(), 1);
        assert_eq!(s.cost(), 2);
        assert_eq!(s.edges().get(0, 2), Some(Sign::Pos));
        assert_eq!(s.edges().get(1, 2), Some(Sign::Pos));
        assert!(verify_lossless(&s, &g).passed());
    }

    #[test]
    fn nested_edge_push_down_drops_leaf_loop() {
        // (A, 0) with A over {0, 1}: covers only the pair (0, 1).
        let g = InputGraph::from_edges(2, [(0, 1)]).unwrap();
        let mut s = HierarchicalSummary::empty(2);
        let a = s.merge_roots(&[0, 1]).unwrap();
        s.set_edge(a, 0, Some(Sign::Pos)).unwrap();
        assert!(verify_lossless(&s, &g).passed());
        push_down_single_edges(&mut s).unwrap();
        assert_eq!(s.cost(), 1);
        assert!(verify_lossless(&s, &g).passed());
    }

    #[test]
    fn complete_block_flattens_to_one_edge() {
        // K_{2,2} between {0,1} and {2,3}, encoded by four leaf edges in two trees.
        let g = InputGraph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        let mut s = HierarchicalSummary::trivial(&g);
        let a = s.merge_roots(&[0, 1]).unwrap();
        let b = s.merge_roots(&[2, 3]).unwrap();
        assert_eq!(s.cost(), 8);
        assert_eq!(flatten_root_pairs(&mut s, &g).unwrap(), 1);
        assert_eq!(s.edges().get(a, b), Some(Sign::Pos));
        assert_eq!(s.cost(), 5);
        assert!(verify_lossless(&s, &g).passed());
    }

    #[test]
    fn flat_prefers_direct_edges_on_ties() {
        // One subedge between {0,1} and {2}: the flat optimum equals the
        // current cost, so nothing changes.
        let g = InputGraph::from_edges(3, [(0, 2)]).unwrap();
        let mut s = HierarchicalSummary::trivial(&g);
        s.merge_roots(&[0, 1]).unwrap();
        assert_eq!(flatten_root_pairs(&mut s, &g).unwrap(), 0);
        assert_eq!(s.edges().get(0, 2), Some(Sign::Pos));
    }
}
