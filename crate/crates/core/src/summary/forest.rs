use std::collections::VecDeque;

use crate::error::{domain, Result};
use crate::graph::NodeId;

/// Supernode index. Ids `0..subnode_count` are the leaves `{u}`; merged
/// supernodes take fresh ascending ids.
pub type SupernodeId = u32;

/// The hierarchy of supernodes: a forest whose leaves are the subnodes.
/// Each parent->child link is one h-edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupernodeForest {
    parent: Vec<Option<SupernodeId>>,
    /// Kept sorted ascending.
    children: Vec<Vec<SupernodeId>>,
    alive: Vec<bool>,
    subtree_size: Vec<u32>,
    leaf_count: usize,
    h_count: usize,
    live_count: usize,
}

impl SupernodeForest {
    pub fn new(leaf_count: usize) -> Self {
        SupernodeForest {
            parent: vec![None; leaf_count],
            children: vec![Vec::new(); leaf_count],
            alive: vec![true; leaf_count],
            subtree_size: vec![1; leaf_count],
            leaf_count,
            h_count: 0,
            live_count: leaf_count,
        }
    }

    /// Builds a forest with `total` supernodes from explicit parent->child
    /// links, then validates it.
    pub fn from_links(
        leaf_count: usize,
        total: usize,
        links: &[(SupernodeId, SupernodeId)],
    ) -> Result<Self> {
        if total < leaf_count {
            return domain("fewer supernodes than subnodes");
        }
        let mut f = SupernodeForest {
            parent: vec![None; total],
            children: vec![Vec::new(); total],
            alive: vec![true; total],
            subtree_size: vec![0; total],
            leaf_count,
            h_count: links.len(),
            live_count: total,
        };
        for &(p, c) in links {
            if p as usize >= total || c as usize >= total {
                return domain(format!("link ({p}, {c}) out of range"));
            }
            if f.parent[c as usize].replace(p).is_some() {
                return domain(format!("supernode {c} has two parents"));
            }
            f.children[p as usize].push(c);
        }
        for kids in &mut f.children {
            kids.sort_unstable();
        }
        // Sizes by post-order from the roots; nodes on a cycle stay at 0 and
        // are caught by `check`.
        let roots: Vec<_> = (0..total as SupernodeId).filter(|&x| f.parent[x as usize].is_none()).collect();
        for r in roots {
            let mut stack = vec![(r, false)];
            while let Some((x, done)) = stack.pop() {
                if done {
                    let own = if f.is_leaf(x) { 1 } else { 0 };
                    f.subtree_size[x as usize] =
                        own + f.children[x as usize].iter().map(|&c| f.subtree_size[c as usize]).sum::<u32>();
                } else {
                    stack.push((x, true));
                    stack.extend(f.children[x as usize].iter().map(|&c| (c, false)));
                }
            }
        }
        for x in 0..total {
            if f.subtree_size[x] == 0 {
                return domain("cycle or detached supernode in hierarchy");
            }
        }
        f.check()?;
        Ok(f)
    }

    pub fn leaf_count(&self) -> usize {
        self.leaf_count
    }

    /// Upper bound (exclusive) on any supernode id ever allocated.
    pub fn id_bound(&self) -> usize {
        self.parent.len()
    }

    pub fn live_count(&self) -> usize {
        self.live_count
    }

    /// Number of h-edges, one per supernode that has a parent.
    pub fn h_count(&self) -> usize {
        self.h_count
    }

    pub fn is_alive(&self, x: SupernodeId) -> bool {
        self.alive.get(x as usize).copied().unwrap_or(false)
    }

    pub fn is_leaf(&self, x: SupernodeId) -> bool {
        (x as usize) < self.leaf_count
    }

    pub fn is_root(&self, x: SupernodeId) -> bool {
        self.is_alive(x) && self.parent[x as usize].is_none()
    }

    pub fn parent(&self, x: SupernodeId) -> Option<SupernodeId> {
        self.parent[x as usize]
    }

    pub fn children(&self, x: SupernodeId) -> &[SupernodeId] {
        &self.children[x as usize]
    }

    /// Number of subnodes under `x`.
    pub fn subtree_size(&self, x: SupernodeId) -> u32 {
        self.subtree_size[x as usize]
    }

    pub fn roots(&self) -> impl Iterator<Item = SupernodeId> + '_ {
        (0..self.id_bound() as SupernodeId).filter(|&x| self.is_root(x))
    }

    pub fn find_root(&self, mut x: SupernodeId) -> SupernodeId {
        while let Some(p) = self.parent[x as usize] {
            x = p;
        }
        x
    }

    /// Number of h-edges between `x` and its root.
    pub fn depth(&self, mut x: SupernodeId) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[x as usize] {
            x = p;
            d += 1;
        }
        d
    }

    /// `x` followed by its proper ancestors, bottom-up.
    pub fn ancestors(&self, x: SupernodeId) -> Vec<SupernodeId> {
        let mut chain = vec![x];
        let mut cur = x;
        while let Some(p) = self.parent[cur as usize] {
            chain.push(p);
            cur = p;
        }
        chain
    }

    /// True when `x`'s subnodes are a subset of `y`'s.
    pub fn is_within(&self, x: SupernodeId, y: SupernodeId) -> bool {
        let mut cur = x;
        loop {
            if cur == y {
                return true;
            }
            match self.parent[cur as usize] {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Subnodes under `x`, in ascending order.
    pub fn leaves(&self, x: SupernodeId) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.subtree_size[x as usize] as usize);
        self.for_each_leaf(x, |u| out.push(u));
        out.sort_unstable();
        out
    }

    pub fn for_each_leaf(&self, x: SupernodeId, mut f: impl FnMut(NodeId)) {
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            if self.is_leaf(y) {
                f(y);
            } else {
                stack.extend_from_slice(&self.children[y as usize]);
            }
        }
    }

    /// Every supernode in the tree under `x`, including `x` (preorder).
    pub fn subtree(&self, x: SupernodeId) -> Vec<SupernodeId> {
        let mut out = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            out.push(y);
            stack.extend(self.children[y as usize].iter().rev());
        }
        out
    }

    /// Height of the tree under `x` (0 for a leaf).
    pub fn height(&self, x: SupernodeId) -> usize {
        let mut best = 0;
        let mut stack = vec![(x, 0usize)];
        while let Some((y, d)) = stack.pop() {
            best = best.max(d);
            for &c in &self.children[y as usize] {
                stack.push((c, d + 1));
            }
        }
        best
    }

    /// Creates a new root whose children are the given roots.
    pub fn merge_roots(&mut self, members: &[SupernodeId]) -> Result<SupernodeId> {
        if members.is_empty() {
            return domain("cannot create a supernode without children");
        }
        for (i, &m) in members.iter().enumerate() {
            if !self.is_root(m) {
                return domain(format!("supernode {m} is not a root"));
            }
            if members[..i].contains(&m) {
                return domain(format!("supernode {m} listed twice"));
            }
        }
        let id = self.parent.len() as SupernodeId;
        let mut kids = members.to_vec();
        kids.sort_unstable();
        let mut size = 0;
        for &m in &kids {
            self.parent[m as usize] = Some(id);
            size += self.subtree_size[m as usize];
        }
        self.h_count += kids.len();
        self.parent.push(None);
        self.children.push(kids);
        self.alive.push(true);
        self.subtree_size.push(size);
        self.live_count += 1;
        Ok(id)
    }

    /// Deletes internal supernode `x`; its children move to its parent or
    /// become roots. Returns the former children.
    pub fn splice_out(&mut self, x: SupernodeId) -> Result<Vec<SupernodeId>> {
        if self.is_leaf(x) || !self.is_alive(x) {
            return domain(format!("supernode {x} is not a live internal supernode"));
        }
        let kids = std::mem::take(&mut self.children[x as usize]);
        let parent = self.parent[x as usize];
        match parent {
            Some(p) => {
                let siblings = &mut self.children[p as usize];
                siblings.retain(|&c| c != x);
                siblings.extend_from_slice(&kids);
                siblings.sort_unstable();
                // x -> parent link goes away; child links are re-pointed.
                self.h_count -= 1;
            }
            None => self.h_count -= kids.len(),
        }
        for &c in &kids {
            self.parent[c as usize] = parent;
        }
        self.parent[x as usize] = None;
        self.alive[x as usize] = false;
        self.subtree_size[x as usize] = 0;
        self.live_count -= 1;
        Ok(kids)
    }

    /// Renumbering that packs live internal supernodes into
    /// `leaf_count..live_count`, preserving their relative order.
    pub(crate) fn compaction_map(&self) -> Vec<Option<SupernodeId>> {
        let mut next = self.leaf_count as SupernodeId;
        (0..self.id_bound())
            .map(|x| {
                if x < self.leaf_count {
                    Some(x as SupernodeId)
                } else if self.alive[x] {
                    next += 1;
                    Some(next - 1)
                } else {
                    None
                }
            })
            .collect()
    }

    pub(crate) fn remapped(&self, map: &[Option<SupernodeId>]) -> Self {
        let mut out = SupernodeForest::new(self.leaf_count);
        let mut order: Vec<(SupernodeId, SupernodeId)> = map
            .iter()
            .enumerate()
            .filter_map(|(old, new)| new.map(|n| (n, old as SupernodeId)))
            .filter(|&(n, _)| n as usize >= self.leaf_count)
            .collect();
        order.sort_unstable();
        for _ in 0..order.len() {
            out.parent.push(None);
            out.children.push(Vec::new());
            out.alive.push(true);
            out.subtree_size.push(0);
        }
        out.live_count = self.leaf_count + order.len();
        for &(new, old) in &order {
            let kids: Vec<_> = self.children[old as usize]
                .iter()
                .map(|&c| map[c as usize].expect("child of live node is live"))
                .collect();
            for &c in &kids {
                out.parent[c as usize] = Some(new);
            }
            out.h_count += kids.len();
            out.children[new as usize] = kids;
            out.children[new as usize].sort_unstable();
            out.subtree_size[new as usize] = self.subtree_size[old as usize];
        }
        out
    }

    /// Structural consistency scan: parent/child agreement, acyclicity,
    /// leaf sets partitioning the subnodes, cached sizes and h-edge count.
    pub fn check(&self) -> Result<()> {
        let n = self.id_bound();
        let mut h = 0;
        for x in 0..n {
            if !self.alive[x] {
                if !self.children[x].is_empty() || self.parent[x].is_some() {
                    return domain(format!("deleted supernode {x} still linked"));
                }
                continue;
            }
            if x < self.leaf_count && !self.children[x].is_empty() {
                return domain(format!("leaf {x} has children"));
            }
            if x >= self.leaf_count && self.children[x].is_empty() {
                return domain(format!("internal supernode {x} has no children"));
            }
            let mut size = if x < self.leaf_count { 1 } else { 0 };
            for &c in &self.children[x] {
                if self.parent[c as usize] != Some(x as SupernodeId) {
                    return domain(format!("child {c} of {x} points elsewhere"));
                }
                size += self.subtree_size[c as usize];
            }
            if size != self.subtree_size[x] {
                return domain(format!("subtree size of {x} is stale"));
            }
            if let Some(p) = self.parent[x] {
                h += 1;
                if !self.is_alive(p) || !self.children[p as usize].contains(&(x as SupernodeId)) {
                    return domain(format!("parent {p} of {x} does not list it"));
                }
            }
        }
        if h != self.h_count {
            return domain("h-edge count is stale");
        }
        // Every leaf reaches a root; the visit from roots covers each leaf once.
        let mut seen = vec![false; n];
        let mut queue: VecDeque<_> = self.roots().collect();
        while let Some(x) = queue.pop_front() {
            if std::mem::replace(&mut seen[x as usize], true) {
                return domain(format!("supernode {x} reached twice"));
            }
            queue.extend(self.children[x as usize].iter().copied());
        }
        if (0..n).any(|x| self.alive[x] && !seen[x]) {
            return domain("cycle or detached supernode in hierarchy");
        }
        Ok(())
    }
}
