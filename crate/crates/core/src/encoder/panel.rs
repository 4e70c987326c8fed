use crate::error::{domain, Result};
use crate::summary::{HierarchicalSummary, Sign, SupernodeId};

/// Stand-in id for the merged node while a merge is only being evaluated.
pub(crate) const VIRTUAL: SupernodeId = SupernodeId::MAX;

/// How one side of a panel looks: a leaf, an internal node kept opaque
/// (more than two children), or an internal node expanded to its one or two
/// children. The flags say whether each child is a leaf.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SideShape {
    Leaf,
    Opaque,
    One(bool),
    Two(bool, bool),
}

impl SideShape {
    fn of(s: &HierarchicalSummary, x: SupernodeId) -> SideShape {
        let f = s.forest();
        if f.is_leaf(x) {
            return SideShape::Leaf;
        }
        match *f.children(x) {
            [c] => SideShape::One(f.is_leaf(c)),
            [c, d] => SideShape::Two(f.is_leaf(c), f.is_leaf(d)),
            _ => SideShape::Opaque,
        }
    }

    fn slot_count(self) -> usize {
        match self {
            SideShape::Leaf | SideShape::Opaque => 1,
            SideShape::One(_) => 2,
            SideShape::Two(..) => 3,
        }
    }

    fn frontier_count(self) -> usize {
        if matches!(self, SideShape::Two(..)) {
            2
        } else {
            1
        }
    }

    fn flipped(self) -> SideShape {
        match self {
            SideShape::Two(x, y) => SideShape::Two(y, x),
            other => other,
        }
    }
}

/// Tree structure of a panel. With `orange` unset the panel is the merged
/// node over sides `a` and `b` (Case 1); with it set, the adjustable pairs
/// run between that yellow panel and the orange side (Case 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PanelShape {
    pub a: SideShape,
    pub b: SideShape,
    pub orange: Option<SideShape>,
}

impl PanelShape {
    pub fn is_case2(&self) -> bool {
        self.orange.is_some()
    }

    pub fn node_count(&self) -> usize {
        1 + self.a.slot_count() + self.b.slot_count() + self.orange.map_or(0, SideShape::slot_count)
    }

    /// Every relabelling that preserves the structure: swapping the sides
    /// and swapping the two children of any side. Each entry pairs the
    /// relabelled shape with `new slot -> old slot`.
    pub(crate) fn automorphisms(&self) -> Vec<(PanelShape, Vec<usize>)> {
        let mut out = Vec::with_capacity(16);
        let a_slots: Vec<usize> = (1..1 + self.a.slot_count()).collect();
        let b_start = 1 + self.a.slot_count();
        let b_slots: Vec<usize> = (b_start..b_start + self.b.slot_count()).collect();
        let c_start = b_start + self.b.slot_count();
        let c_slots: Vec<usize> = match self.orange {
            Some(c) => (c_start..c_start + c.slot_count()).collect(),
            None => Vec::new(),
        };
        let side = |shape: SideShape, slots: &[usize], flip: bool| -> (SideShape, Vec<usize>) {
            if flip {
                (shape.flipped(), vec![slots[0], slots[2], slots[1]])
            } else {
                (shape, slots.to_vec())
            }
        };
        let flips = |shape: SideShape| -> &'static [bool] {
            if matches!(shape, SideShape::Two(..)) {
                &[false, true]
            } else {
                &[false]
            }
        };
        for swap in [false, true] {
            let (first, first_slots, second, second_slots) = if swap {
                (self.b, &b_slots, self.a, &a_slots)
            } else {
                (self.a, &a_slots, self.b, &b_slots)
            };
            for &fa in flips(first) {
                for &fb in flips(second) {
                    let orange_flips: &[bool] = match self.orange {
                        Some(c) => flips(c),
                        None => &[false],
                    };
                    for &fc in orange_flips {
                        let (na, sa) = side(first, first_slots, fa);
                        let (nb, sb) = side(second, second_slots, fb);
                        let mut map = vec![0];
                        map.extend(sa);
                        map.extend(sb);
                        let orange = self.orange.map(|c| {
                            let (nc, sc) = side(c, &c_slots, fc);
                            map.extend(sc);
                            nc
                        });
                        out.push((PanelShape { a: na, b: nb, orange }, map));
                    }
                }
            }
        }
        out
    }
}

/// The abstract constraint structure of a panel shape: which slots are
/// frontier nodes, which pairs may carry edges and which frontier-pair
/// blocks each such pair covers.
#[derive(Clone, Debug)]
pub struct PanelLayout {
    pub shape: PanelShape,
    /// Slot indices of the frontier nodes, in slot order.
    pub frontier: Vec<usize>,
    /// Per slot: bitmask over frontier indices of the frontier nodes below it.
    pub cover: Vec<u16>,
    /// Slot pairs, `(i, j)` with `i <= j` (Case 1) or yellow x orange (Case 2).
    pub adjustable: Vec<(usize, usize)>,
    /// Frontier index pairs carrying a constraint.
    pub frontier_pairs: Vec<(usize, usize)>,
    /// Self pairs of leaf frontier nodes hold no subnode pair; any value fits.
    pub free: Vec<bool>,
    /// Per adjustable pair: bitmask over `frontier_pairs` it covers.
    pub pair_cover: Vec<u32>,
    yellow_len: usize,
}

impl PanelLayout {
    pub fn new(shape: PanelShape) -> PanelLayout {
        let n = shape.node_count();
        let mut parent: Vec<Option<usize>> = vec![None; n];
        let mut frontier = Vec::new();
        let mut leafy = Vec::new();
        let mut slot = 1;
        let mut add_side = |side: SideShape, root_parent: Option<usize>, parent: &mut Vec<Option<usize>>| {
            let x = slot;
            parent[x] = root_parent;
            slot += 1;
            match side {
                SideShape::Leaf | SideShape::Opaque => {
                    frontier.push(x);
                    leafy.push(side == SideShape::Leaf);
                }
                SideShape::One(l) => {
                    parent[slot] = Some(x);
                    frontier.push(slot);
                    leafy.push(l);
                    slot += 1;
                }
                SideShape::Two(l1, l2) => {
                    for l in [l1, l2] {
                        parent[slot] = Some(x);
                        frontier.push(slot);
                        leafy.push(l);
                        slot += 1;
                    }
                }
            }
        };
        add_side(shape.a, Some(0), &mut parent);
        add_side(shape.b, Some(0), &mut parent);
        let yellow_len = 1 + shape.a.slot_count() + shape.b.slot_count();
        if let Some(c) = shape.orange {
            add_side(c, None, &mut parent);
        }
        let yellow_frontier = shape.a.frontier_count() + shape.b.frontier_count();

        let mut cover = vec![0u16; n];
        for (fi, &f) in frontier.iter().enumerate() {
            let mut x = Some(f);
            while let Some(y) = x {
                cover[y] |= 1 << fi;
                x = parent[y];
            }
        }

        let mut adjustable = Vec::new();
        let mut frontier_pairs = Vec::new();
        let mut free = Vec::new();
        if shape.is_case2() {
            for i in 0..yellow_len {
                for j in yellow_len..n {
                    adjustable.push((i, j));
                }
            }
            for i in 0..yellow_frontier {
                for j in yellow_frontier..frontier.len() {
                    frontier_pairs.push((i, j));
                    free.push(false);
                }
            }
        } else {
            for i in 0..n {
                for j in i..n {
                    adjustable.push((i, j));
                }
            }
            for i in 0..frontier.len() {
                for j in i..frontier.len() {
                    frontier_pairs.push((i, j));
                    free.push(i == j && leafy[i]);
                }
            }
        }

        let pair_cover = adjustable
            .iter()
            .map(|&(z1, z2)| {
                let mut mask = 0u32;
                for (p, &(x, y)) in frontier_pairs.iter().enumerate() {
                    let (bx, by) = (1u16 << x, 1u16 << y);
                    let hit = (cover[z1] & bx != 0 && cover[z2] & by != 0)
                        || (cover[z2] & bx != 0 && cover[z1] & by != 0);
                    if hit {
                        mask |= 1 << p;
                    }
                }
                mask
            })
            .collect();

        PanelLayout { shape, frontier, cover, adjustable, frontier_pairs, free, pair_cover, yellow_len }
    }

    pub fn node_count(&self) -> usize {
        self.cover.len()
    }

    pub fn yellow_len(&self) -> usize {
        self.yellow_len
    }

    /// Index of the adjustable pair joining two slots, in either order.
    pub fn pair_index(&self, i: usize, j: usize) -> Option<usize> {
        self.adjustable
            .iter()
            .position(|&(x, y)| (x, y) == (i, j) || (x, y) == (j, i))
    }

    /// Index of the frontier pair joining two frontier indices, in either order.
    pub fn frontier_pair_index(&self, x: usize, y: usize) -> Option<usize> {
        self.frontier_pairs
            .iter()
            .position(|&(a, b)| (a, b) == (x, y) || (a, b) == (y, x))
    }

    /// Net contribution of an assignment to every frontier pair.
    pub fn deltas_of(&self, signs: &[i8]) -> Vec<i32> {
        let mut d = vec![0; self.frontier_pairs.len()];
        for (k, &s) in signs.iter().enumerate() {
            if s != 0 {
                let mut m = self.pair_cover[k];
                while m != 0 {
                    d[m.trailing_zeros() as usize] += s as i32;
                    m &= m - 1;
                }
            }
        }
        for (p, &free) in self.free.iter().enumerate() {
            if free {
                d[p] = 0;
            }
        }
        d
    }
}

/// A panel placed on a concrete summary: the shape plus the supernode in
/// every slot. Slot 0 holds the merged node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Panel {
    pub shape: PanelShape,
    pub nodes: Vec<SupernodeId>,
}

fn side_nodes(s: &HierarchicalSummary, x: SupernodeId, shape: SideShape, out: &mut Vec<SupernodeId>) {
    out.push(x);
    if matches!(shape, SideShape::One(_) | SideShape::Two(..)) {
        out.extend_from_slice(s.forest().children(x));
    }
}

impl Panel {
    /// Panel for merging roots `a` and `b`; slot 0 holds `merged`, which may
    /// be [`VIRTUAL`] when the merge has not happened.
    pub(crate) fn for_pair(
        s: &HierarchicalSummary,
        merged: SupernodeId,
        a: SupernodeId,
        b: SupernodeId,
        orange: Option<SupernodeId>,
    ) -> Panel {
        let (sa, sb) = (SideShape::of(s, a), SideShape::of(s, b));
        let mut nodes = vec![merged];
        side_nodes(s, a, sa, &mut nodes);
        side_nodes(s, b, sb, &mut nodes);
        let oc = orange.map(|c| {
            let sc = SideShape::of(s, c);
            side_nodes(s, c, sc, &mut nodes);
            sc
        });
        Panel { shape: PanelShape { a: sa, b: sb, orange: oc }, nodes }
    }

    pub fn frontier(&self) -> Vec<SupernodeId> {
        PanelLayout::new(self.shape).frontier.iter().map(|&i| self.nodes[i]).collect()
    }

    pub fn adjustable_pairs(&self) -> Vec<(SupernodeId, SupernodeId)> {
        PanelLayout::new(self.shape)
            .adjustable
            .iter()
            .map(|&(i, j)| (self.nodes[i], self.nodes[j]))
            .collect()
    }

    /// Current signs on the adjustable pairs, in layout order.
    pub(crate) fn current_signs(&self, s: &HierarchicalSummary, layout: &PanelLayout) -> Vec<i8> {
        layout
            .adjustable
            .iter()
            .map(|&(i, j)| {
                let (x, y) = (self.nodes[i], self.nodes[j]);
                if x == VIRTUAL || y == VIRTUAL {
                    0
                } else {
                    s.edges().get(x, y).map_or(0, |sg| sg.value() as i8)
                }
            })
            .collect()
    }
}

/// Builds the panel for a merged root over two children, optionally the
/// Case-2 panel against another root `case2_root`.
pub fn build_panel(
    s: &HierarchicalSummary,
    merged: SupernodeId,
    case2_root: Option<SupernodeId>,
) -> Result<Panel> {
    let f = s.forest();
    if !f.is_root(merged) || f.is_leaf(merged) || f.children(merged).len() != 2 {
        return domain(format!("supernode {merged} is not a root over two merged nodes"));
    }
    let (a, b) = (f.children(merged)[0], f.children(merged)[1]);
    if let Some(c) = case2_root {
        if c == merged || !f.is_root(c) {
            return domain(format!("supernode {c} is not another root"));
        }
    }
    let panel = Panel::for_pair(s, merged, a, b, case2_root);
    if panel.shape.is_case2() {
        let layout = PanelLayout::new(panel.shape);
        if panel.current_signs(s, &layout).iter().all(|&x| x == 0) {
            return domain(format!(
                "root {} has no edge into the merged panel",
                case2_root.unwrap_or_default()
            ));
        }
    }
    Ok(panel)
}

/// Replaces every edge on the panel's adjustable pairs with the assignment.
pub fn apply_encoding(s: &mut HierarchicalSummary, panel: &Panel, signs: &[i8]) -> Result<()> {
    let layout = PanelLayout::new(panel.shape);
    if signs.len() != layout.adjustable.len() {
        return domain("assignment does not match the panel");
    }
    for (&(i, j), &v) in layout.adjustable.iter().zip(signs) {
        let (x, y) = (panel.nodes[i], panel.nodes[j]);
        if x == VIRTUAL || y == VIRTUAL {
            return domain("cannot apply an encoding to an unmerged panel");
        }
        s.set_edge(x, y, Sign::from_value(v as i32))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf_pair() -> PanelShape {
        PanelShape { a: SideShape::Leaf, b: SideShape::Leaf, orange: None }
    }

    #[test]
    fn leaf_merge_layout() {
        let l = PanelLayout::new(leaf_pair());
        assert_eq!(l.node_count(), 3);
        assert_eq!(l.frontier, vec![1, 2]);
        assert_eq!(l.adjustable.len(), 6);
        assert_eq!(l.frontier_pairs, vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(l.free, vec![true, false, true]);
        // The merged self-loop covers all three frontier pairs.
        assert_eq!(l.pair_cover[0], 0b111);
    }

    #[test]
    fn full_yellow_panel() {
        let two = SideShape::Two(true, false);
        let l = PanelLayout::new(PanelShape { a: two, b: two, orange: None });
        assert_eq!(l.node_count(), 7);
        assert_eq!(l.frontier, vec![2, 3, 5, 6]);
        assert_eq!(l.adjustable.len(), 28);
        assert_eq!(l.frontier_pairs.len(), 10);
        let c2 = PanelLayout::new(PanelShape { a: two, b: two, orange: Some(two) });
        assert_eq!(c2.adjustable.len(), 21);
        assert_eq!(c2.frontier_pairs.len(), 8);
        assert!(c2.free.iter().all(|&f| !f));
    }

    #[test]
    fn frontier_pairs_are_exclusive() {
        let shape = PanelShape { a: SideShape::Two(true, true), b: SideShape::One(false), orange: None };
        let l = PanelLayout::new(shape);
        for (p, &(x, y)) in l.frontier_pairs.iter().enumerate() {
            let k = l.pair_index(l.frontier[x], l.frontier[y]).unwrap();
            assert_eq!(l.pair_cover[k], 1 << p);
        }
    }

    #[test]
    fn automorphism_counts() {
        let two = SideShape::Two(true, true);
        assert_eq!(leaf_pair().automorphisms().len(), 2);
        let full = PanelShape { a: two, b: two, orange: Some(two) };
        assert_eq!(full.automorphisms().len(), 16);
        for (shape, map) in full.automorphisms() {
            assert_eq!(shape.node_count(), map.len());
        }
    }

    #[test]
    fn build_panel_for_leaves() {
        let mut s = HierarchicalSummary::empty(3);
        s.set_edge(0, 2, Some(Sign::Pos)).unwrap();
        let m = s.merge_roots(&[0, 1]).unwrap();
        let p = build_panel(&s, m, None).unwrap();
        assert_eq!(p.nodes, vec![m, 0, 1]);
        assert_eq!(p.frontier(), vec![0, 1]);
        let c2 = build_panel(&s, m, Some(2)).unwrap();
        assert_eq!(c2.frontier(), vec![0, 1, 2]);
        assert_eq!(c2.adjustable_pairs(), vec![(m, 2), (0, 2), (1, 2)]);
        let mut t = HierarchicalSummary::empty(3);
        let m = t.merge_roots(&[0, 1]).unwrap();
        assert!(build_panel(&t, m, Some(2)).is_err());
        assert!(build_panel(&t, 0, None).is_err());
    }
}
