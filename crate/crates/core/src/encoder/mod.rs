//! Re-encoding of the edges around a merge.
//!
//! A panel is the merged node with its two sides (optionally against one
//! other root's side). Its frontier nodes split every subnode pair the
//! panel's adjustable edges can reach into blocks, and every adjustable
//! edge covers a block entirely or not at all. Keeping each block's net
//! contribution fixed therefore keeps the decoded graph fixed, so the
//! re-encoding is a small exact-cover style search over block deltas.

mod memo;
mod panel;
mod solver;

pub use memo::{memo_stats, MemoStats, MemoTable, DEFAULT_BAND};
pub use panel::{apply_encoding, build_panel, Panel, PanelLayout, PanelShape, SideShape};
pub use solver::BRUTE_FORCE_MAX_NODES;

pub(crate) use panel::VIRTUAL;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::summary::HierarchicalSummary;

/// Required net contribution of the adjustable edges to every frontier pair
/// of a panel shape, in [`PanelLayout::frontier_pairs`] order. Free pairs
/// hold 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaSignature {
    pub shape: PanelShape,
    pub deltas: Vec<i32>,
}

impl DeltaSignature {
    pub fn new(shape: PanelShape, mut deltas: Vec<i32>) -> Result<Self> {
        let layout = PanelLayout::new(shape);
        if deltas.len() != layout.frontier_pairs.len() {
            return Err(Error::Encoding(format!(
                "expected {} deltas, got {}",
                layout.frontier_pairs.len(),
                deltas.len()
            )));
        }
        for (d, &free) in deltas.iter_mut().zip(&layout.free) {
            if free {
                *d = 0;
            }
        }
        Ok(DeltaSignature { shape, deltas })
    }
}

/// Signs on the adjustable pairs of a panel shape, in
/// [`PanelLayout::adjustable`] order: +1 p-edge, -1 n-edge, 0 none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodingAssignment {
    pub signs: Vec<i8>,
}

impl EncodingAssignment {
    pub fn cardinality(&self) -> usize {
        self.signs.iter().filter(|&&v| v != 0).count()
    }

    pub fn n_edges(&self) -> usize {
        self.signs.iter().filter(|&&v| v < 0).count()
    }

    pub fn realizes(&self, sig: &DeltaSignature) -> bool {
        let layout = PanelLayout::new(sig.shape);
        self.signs.len() == layout.adjustable.len() && layout.deltas_of(&self.signs) == sig.deltas
    }
}

pub fn signature_of(s: &HierarchicalSummary, panel: &Panel) -> DeltaSignature {
    let layout = PanelLayout::new(panel.shape);
    let current = panel.current_signs(s, &layout);
    DeltaSignature { shape: panel.shape, deltas: layout.deltas_of(&current) }
}

/// Minimum-cardinality realizing assignment, fewest n-edges among those.
pub fn min_encoding(sig: &DeltaSignature, memo: &mut MemoTable) -> Result<EncodingAssignment> {
    min_encoding_bounded(sig, None, memo)
}

/// As [`min_encoding`], with the score of a known realizing assignment to
/// bound the search. The answer is the same with or without it.
pub(crate) fn min_encoding_bounded(
    sig: &DeltaSignature,
    incumbent: Option<(usize, usize)>,
    memo: &mut MemoTable,
) -> Result<EncodingAssignment> {
    let base = memo.layout(sig.shape);
    if sig.deltas.len() != base.frontier_pairs.len() {
        return Err(Error::Encoding("signature does not match its shape".into()));
    }
    // Canonical form: the smallest (shape, deltas) over all relabellings.
    let mut best: Option<(PanelShape, Vec<i32>, Vec<usize>)> = None;
    for (shape, map) in sig.shape.automorphisms() {
        let layout = memo.layout(shape);
        let deltas: Vec<i32> = layout
            .frontier_pairs
            .iter()
            .map(|&(x, y)| {
                let fx = base.frontier.iter().position(|&f| f == map[layout.frontier[x]]).unwrap();
                let fy = base.frontier.iter().position(|&f| f == map[layout.frontier[y]]).unwrap();
                sig.deltas[base.frontier_pair_index(fx, fy).unwrap()]
            })
            .collect();
        if best.as_ref().is_none_or(|(bs, bd, _)| (shape, &deltas) < (*bs, bd)) {
            best = Some((shape, deltas, map));
        }
    }
    let (shape, deltas, map) = best.expect("identity relabelling always exists");
    let layout = memo.layout(shape);

    let signs: Arc<[i8]> = match memo.key(shape, &deltas) {
        Some(key) => match memo.get(&key) {
            Some(hit) => hit,
            None => {
                let solved: Arc<[i8]> = solver::solve(&layout, &deltas, incumbent)?.into();
                memo.insert(key, solved.clone());
                solved
            }
        },
        None => solver::solve(&layout, &deltas, incumbent)?.into(),
    };

    let mut out = vec![0i8; base.adjustable.len()];
    for (k, &(i, j)) in layout.adjustable.iter().enumerate() {
        if signs[k] != 0 {
            out[base.pair_index(map[i], map[j]).unwrap()] = signs[k];
        }
    }
    Ok(EncodingAssignment { signs: out })
}

/// Exhaustive oracle for panels of at most [`BRUTE_FORCE_MAX_NODES`] nodes.
pub fn brute_force_min_encoding(sig: &DeltaSignature) -> Result<EncodingAssignment> {
    let layout = PanelLayout::new(sig.shape);
    solver::brute_force(&layout, &sig.deltas).map(|signs| EncodingAssignment { signs })
}
