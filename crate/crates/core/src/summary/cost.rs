use std::collections::{BTreeMap, HashSet};

use crate::error::{domain, Result};
use crate::summary::{HierarchicalSummary, SupernodeId};

fn require_root(s: &HierarchicalSummary, a: SupernodeId) -> Result<()> {
    if s.forest.is_root(a) {
        Ok(())
    } else {
        domain(format!("supernode {a} is not a root"))
    }
}

/// `(h_cost, p_cost)` for root `a`: h-edges inside its tree, and p/n-edges
/// with at least one endpoint in the tree (an internal edge counts once).
pub fn cost_components(s: &HierarchicalSummary, a: SupernodeId) -> Result<(usize, usize)> {
    require_root(s, a)?;
    let tree = s.forest.subtree(a);
    let members: HashSet<_> = tree.iter().copied().collect();
    let mut p = 0;
    for &x in &tree {
        for (y, _) in s.edges.incident(x) {
            if !members.contains(&y) || x <= y {
                p += 1;
            }
        }
    }
    Ok((tree.len() - 1, p))
}

/// Number of p/n-edges with one endpoint in `a`'s tree and the other in
/// `b`'s. For `a == b` this counts edges inside the tree, each once.
pub fn pair_cost(s: &HierarchicalSummary, a: SupernodeId, b: SupernodeId) -> Result<usize> {
    require_root(s, a)?;
    require_root(s, b)?;
    let tree_a = s.forest.subtree(a);
    let count = if a == b {
        let members: HashSet<_> = tree_a.iter().copied().collect();
        tree_a
            .iter()
            .map(|&x| s.edges.incident(x).filter(|&(y, _)| x <= y && members.contains(&y)).count())
            .sum()
    } else {
        let members_b: HashSet<_> = s.forest.subtree(b).into_iter().collect();
        tree_a
            .iter()
            .map(|&x| s.edges.incident(x).filter(|(y, _)| members_b.contains(y)).count())
            .sum()
    };
    Ok(count)
}

/// Edge counts grouped by the (ordered) root pair covering each edge's
/// endpoints. Pairs with no edges are absent.
pub fn root_pair_costs(s: &HierarchicalSummary) -> BTreeMap<(SupernodeId, SupernodeId), usize> {
    let mut out = BTreeMap::new();
    for (a, b, _) in s.edges.iter() {
        let (ra, rb) = (s.forest.find_root(a), s.forest.find_root(b));
        *out.entry((ra.min(rb), ra.max(rb))).or_insert(0) += 1;
    }
    out
}
