use std::collections::HashMap;

use num_rational::Ratio;

use crate::encoder::{self, DeltaSignature, MemoTable, Panel, VIRTUAL};
use crate::error::{domain, Result};
use crate::summary::{HierarchicalSummary, Sign, SupernodeId};

/// Relative saving of a merge; `None` stands for minus infinity (nothing to
/// save because both roots are cost-free).
pub type Saving = Option<Ratio<i64>>;

/// Cost bookkeeping for one evaluated merge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeCosts {
    /// `Cost_A + Cost_B - Cost_{A,B}`.
    pub before: usize,
    /// `Cost_{A∪B}` after re-encoding.
    pub after: usize,
}

impl MergeCosts {
    pub fn saving(&self) -> Saving {
        if self.before == 0 {
            None
        } else {
            Some(Ratio::new(self.before as i64 - self.after as i64, self.before as i64))
        }
    }
}

/// A summary under construction plus the per-root counters merging needs.
/// Every edge change goes through the engine so the counters stay exact.
#[derive(Clone, Debug)]
pub struct MergeEngine {
    s: HierarchicalSummary,
    memo: MemoTable,
    height_bound: Option<usize>,
    /// Union-find over supernode ids; `rep_root` maps a representative to its root.
    dsu: Vec<SupernodeId>,
    rep_root: Vec<SupernodeId>,
    /// Per root: h-edges in its tree, tree height, edges touching the tree.
    h_cost: Vec<usize>,
    height: Vec<usize>,
    touch: Vec<usize>,
    /// Per root: number of edges between its tree and each other tree
    /// (the own tree's internal edges under its own id).
    root_adj: Vec<HashMap<SupernodeId, u32>>,
    merges: usize,
}

impl MergeEngine {
    /// Takes over a summary whose roots are all arbitrary trees.
    pub fn new(s: HierarchicalSummary, memo: MemoTable, height_bound: Option<usize>) -> Self {
        let n = s.forest().id_bound();
        let mut e = MergeEngine {
            memo,
            height_bound,
            dsu: (0..n as SupernodeId).collect(),
            rep_root: (0..n as SupernodeId).collect(),
            h_cost: vec![0; n],
            height: vec![0; n],
            touch: vec![0; n],
            root_adj: vec![HashMap::new(); n],
            merges: 0,
            s,
        };
        for r in e.s.roots() {
            for x in e.s.forest().subtree(r) {
                e.dsu[x as usize] = r;
            }
            e.h_cost[r as usize] = e.s.forest().subtree(r).len() - 1;
            e.height[r as usize] = e.s.forest().height(r);
        }
        let edges: Vec<_> = e.s.edges().iter().map(|(a, b, _)| (a, b)).collect();
        for (a, b) in edges {
            e.count_edge(a, b, 1);
        }
        e
    }

    pub fn summary(&self) -> &HierarchicalSummary {
        &self.s
    }

    pub fn into_parts(self) -> (HierarchicalSummary, MemoTable) {
        (self.s, self.memo)
    }

    pub fn memo(&self) -> &MemoTable {
        &self.memo
    }

    pub fn merges(&self) -> usize {
        self.merges
    }

    fn find(&mut self, mut x: SupernodeId) -> SupernodeId {
        while self.dsu[x as usize] != x {
            let p = self.dsu[x as usize];
            self.dsu[x as usize] = self.dsu[p as usize];
            x = p;
        }
        x
    }

    pub fn root_of(&mut self, x: SupernodeId) -> SupernodeId {
        let r = self.find(x);
        self.rep_root[r as usize]
    }

    pub fn is_root(&self, x: SupernodeId) -> bool {
        self.s.forest().is_root(x)
    }

    /// `(Cost^H_A, Cost^P_A)` from the counters.
    pub fn root_costs(&self, a: SupernodeId) -> (usize, usize) {
        (self.h_cost[a as usize], self.touch[a as usize])
    }

    pub fn tree_height(&self, a: SupernodeId) -> usize {
        self.height[a as usize]
    }

    /// Edges between the trees of two roots (`a == b`: inside one tree).
    pub fn between(&self, a: SupernodeId, b: SupernodeId) -> usize {
        self.root_adj[a as usize].get(&b).copied().unwrap_or(0) as usize
    }

    fn count_edge(&mut self, x: SupernodeId, y: SupernodeId, d: i32) {
        let (rx, ry) = (self.root_of(x), self.root_of(y));
        let bump = |m: &mut HashMap<SupernodeId, u32>, k: SupernodeId| {
            let slot = m.entry(k).or_insert(0);
            *slot = (*slot as i32 + d) as u32;
            if *slot == 0 {
                m.remove(&k);
            }
        };
        bump(&mut self.root_adj[rx as usize], ry);
        self.touch[rx as usize] = (self.touch[rx as usize] as i64 + d as i64) as usize;
        if rx != ry {
            bump(&mut self.root_adj[ry as usize], rx);
            self.touch[ry as usize] = (self.touch[ry as usize] as i64 + d as i64) as usize;
        }
    }

    fn set_edge(&mut self, x: SupernodeId, y: SupernodeId, sign: Option<Sign>) -> Result<()> {
        let prev = self.s.set_edge(x, y, sign)?;
        match (prev.is_some(), sign.is_some()) {
            (false, true) => self.count_edge(x, y, 1),
            (true, false) => self.count_edge(x, y, -1),
            _ => {}
        }
        Ok(())
    }

    fn height_ok(&self, a: SupernodeId, b: SupernodeId) -> bool {
        self.height_bound
            .is_none_or(|hb| 1 + self.height[a as usize].max(self.height[b as usize]) <= hb)
    }

    /// Current edge count and the optimal re-encoding of one panel, when the
    /// panel can shrink at all.
    fn solve_panel(&mut self, panel: &Panel) -> Result<Option<(usize, Vec<i8>)>> {
        let layout = self.memo.layout(panel.shape);
        let current = panel.current_signs(&self.s, &layout);
        let count = current.iter().filter(|&&v| v != 0).count();
        // A single edge is already optimal: the signature is nonzero.
        if count <= 1 {
            return Ok(None);
        }
        let neg = current.iter().filter(|&&v| v < 0).count();
        let sig = DeltaSignature { shape: panel.shape, deltas: layout.deltas_of(&current) };
        let enc = encoder::min_encoding_bounded(&sig, Some((count, neg)), &mut self.memo)?;
        Ok(Some((count - enc.cardinality(), enc.signs)))
    }

    /// Orange roots with at least two edges into the yellow panel.
    fn orange_roots(&mut self, yellow: &Panel, exclude: &[SupernodeId]) -> Vec<SupernodeId> {
        let mut hits = Vec::new();
        for &y in &yellow.nodes {
            if y != VIRTUAL {
                hits.extend(self.s.edges().incident(y).map(|(z, _)| z));
            }
        }
        let mut counted = Vec::with_capacity(hits.len());
        for z in hits {
            let c = self.root_of(z);
            let f = self.s.forest();
            if !exclude.contains(&c) && (z == c || (f.parent(z) == Some(c) && f.children(c).len() <= 2)) {
                counted.push(c);
            }
        }
        counted.sort_unstable();
        let mut out = Vec::new();
        for run in counted.chunk_by(|x, y| x == y) {
            if run.len() >= 2 {
                out.push(run[0]);
            }
        }
        out
    }

    /// Costs of merging roots `a` and `b`, without touching the summary.
    /// `None` when the height bound forbids the merge.
    pub fn evaluate(&mut self, a: SupernodeId, b: SupernodeId) -> Result<Option<MergeCosts>> {
        if a == b || !self.is_root(a) || !self.is_root(b) {
            return domain(format!("cannot merge {a} and {b}: need two distinct roots"));
        }
        if !self.height_ok(a, b) {
            return Ok(None);
        }
        let before = self.h_cost[a as usize] + self.h_cost[b as usize] + self.touch[a as usize]
            + self.touch[b as usize]
            - self.between(a, b);
        let mut reduction = 0;
        let yellow = Panel::for_pair(&self.s, VIRTUAL, a, b, None);
        if let Some((r, _)) = self.solve_panel(&yellow)? {
            reduction += r;
        }
        for c in self.orange_roots(&yellow, &[a, b]) {
            let panel = Panel::for_pair(&self.s, VIRTUAL, a, b, Some(c));
            if let Some((r, _)) = self.solve_panel(&panel)? {
                reduction += r;
            }
        }
        Ok(Some(MergeCosts { before, after: before + 2 - reduction }))
    }

    pub fn saving(&mut self, a: SupernodeId, b: SupernodeId) -> Result<Saving> {
        Ok(self.evaluate(a, b)?.and_then(|c| c.saving()))
    }

    /// Merges roots `a` and `b` under a new root and re-encodes the edges
    /// around it. Returns `None` when the height bound refuses the merge.
    pub fn merge_and_update(&mut self, a: SupernodeId, b: SupernodeId) -> Result<Option<SupernodeId>> {
        if a == b || !self.is_root(a) || !self.is_root(b) {
            return domain(format!("cannot merge {a} and {b}: need two distinct roots"));
        }
        if !self.height_ok(a, b) {
            return Ok(None);
        }
        let probe = Panel::for_pair(&self.s, VIRTUAL, a, b, None);
        let oranges = self.orange_roots(&probe, &[a, b]);

        let m = self.s.merge_roots(&[a, b])?;
        let n = self.s.forest().id_bound();
        self.dsu.resize(n, 0);
        self.dsu[m as usize] = m;
        self.rep_root.resize(n, 0);
        self.h_cost.resize(n, 0);
        self.height.resize(n, 0);
        self.touch.resize(n, 0);
        self.root_adj.resize(n, HashMap::new());
        let (ra, rb) = (self.find(a), self.find(b));
        self.dsu[ra as usize] = m;
        self.dsu[rb as usize] = m;
        self.rep_root[m as usize] = m;

        let (ia, ib, im) = (a as usize, b as usize, m as usize);
        self.h_cost[im] = self.h_cost[ia] + self.h_cost[ib] + 2;
        self.height[im] = 1 + self.height[ia].max(self.height[ib]);
        let between = self.between(a, b);
        self.touch[im] = self.touch[ia] + self.touch[ib] - between;
        let adj_a = std::mem::take(&mut self.root_adj[ia]);
        let adj_b = std::mem::take(&mut self.root_adj[ib]);
        let mut adj_m: HashMap<SupernodeId, u32> = HashMap::new();
        for (adj, own) in [(adj_a, a), (adj_b, b)] {
            for (r, c) in adj {
                if r == a || r == b {
                    // The a-b count appears in both maps; keep one copy.
                    if !(r == b && own == a) {
                        *adj_m.entry(m).or_insert(0) += c;
                    }
                } else {
                    *adj_m.entry(r).or_insert(0) += c;
                    let other = &mut self.root_adj[r as usize];
                    other.remove(&own);
                    *other.entry(m).or_insert(0) += c;
                }
            }
        }
        self.root_adj[im] = adj_m;
        for i in [ia, ib] {
            self.h_cost[i] = 0;
            self.height[i] = 0;
            self.touch[i] = 0;
        }
        self.merges += 1;

        let yellow = encoder::build_panel(&self.s, m, None)?;
        self.apply(&yellow)?;
        for c in oranges {
            let panel = Panel::for_pair(&self.s, m, a, b, Some(c));
            self.apply(&panel)?;
        }
        Ok(Some(m))
    }

    fn apply(&mut self, panel: &Panel) -> Result<()> {
        let Some((_, signs)) = self.solve_panel(panel)? else {
            return Ok(());
        };
        let layout = self.memo.layout(panel.shape);
        for (k, &(i, j)) in layout.adjustable.iter().enumerate() {
            let (x, y) = (panel.nodes[i], panel.nodes[j]);
            let want = Sign::from_value(signs[k] as i32);
            if self.s.edges().get(x, y) != want {
                self.set_edge(x, y, want)?;
            }
        }
        Ok(())
    }

    /// Recomputes every counter from scratch and compares.
    pub fn check_counters(&self) -> Result<()> {
        let fresh = MergeEngine::new(self.s.clone(), MemoTable::new(), self.height_bound);
        for r in self.s.roots() {
            let i = r as usize;
            if fresh.h_cost[i] != self.h_cost[i]
                || fresh.touch[i] != self.touch[i]
                || fresh.height[i] != self.height[i]
                || fresh.root_adj[i] != self.root_adj[i]
            {
                return domain(format!("stale counters for root {r}"));
            }
        }
        Ok(())
    }
}
