//! Exact minimum-cardinality assignment for a delta signature.
//!
//! Variables are the adjustable pairs, each taking -1, 0 or +1. Every
//! constrained frontier pair has one variable of its own (the pair of the two
//! frontier nodes), so the search branches only over the remaining "shared"
//! variables and settles the exclusive ones from the residuals at the leaves.

use crate::encoder::panel::PanelLayout;
use crate::error::{Error, Result};

/// (cardinality, n-edge count); smaller is better.
pub(crate) type Score = (usize, usize);

#[cfg(test)]
pub(crate) fn score(signs: &[i8]) -> Score {
    let card = signs.iter().filter(|&&v| v != 0).count();
    let neg = signs.iter().filter(|&&v| v < 0).count();
    (card, neg)
}

struct Search {
    /// Shared variables in branching order.
    vars: Vec<usize>,
    /// Constrained frontier pairs covered by each shared variable.
    var_pairs: Vec<Vec<usize>>,
    /// Exclusive variable of each constrained frontier pair.
    own_var: Vec<Option<usize>>,
    constrained: Vec<usize>,
    /// `remaining[i][p]`: shared variables at positions `>= i` covering `p`.
    remaining: Vec<Vec<u8>>,
    /// Largest coverage among shared variables at positions `>= i`.
    cmax: Vec<usize>,
    residual: Vec<i32>,
    signs: Vec<i8>,
    best: Option<(Score, Vec<i8>)>,
    incumbent: Option<Score>,
}

impl Search {
    fn lower_bound(&self, i: usize) -> usize {
        let mut sum = 0usize;
        let mut max = 0usize;
        let mut alone = 0usize;
        for &p in &self.constrained {
            let r = self.residual[p].unsigned_abs() as usize;
            sum += r;
            max = max.max(r);
            if r != 0 && self.remaining[i][p] == 0 {
                alone += 1;
            }
        }
        let c = self.cmax[i].max(1);
        max.max(sum.div_ceil(c)).max(alone)
    }

    fn feasible(&self, i: usize) -> bool {
        self.constrained
            .iter()
            .all(|&p| self.residual[p].unsigned_abs() <= 1 + self.remaining[i][p] as u32)
    }

    fn beaten(&self, s: Score) -> bool {
        match (&self.best, self.incumbent) {
            (Some((b, _)), _) => s >= *b,
            (None, Some(inc)) => s > inc,
            (None, None) => false,
        }
    }

    fn dfs(&mut self, i: usize, used: usize, neg: usize) {
        if !self.feasible(i) || self.beaten((used + self.lower_bound(i), neg)) {
            return;
        }
        if i == self.vars.len() {
            let mut card = used;
            let mut n = neg;
            for &p in &self.constrained {
                match self.residual[p] {
                    0 => {}
                    -1 => {
                        card += 1;
                        n += 1;
                    }
                    _ => card += 1,
                }
            }
            if self.beaten((card, n)) {
                return;
            }
            let mut full = self.signs.clone();
            for &p in &self.constrained {
                if let Some(k) = self.own_var[p] {
                    full[k] = self.residual[p] as i8;
                }
            }
            self.best = Some(((card, n), full));
            return;
        }
        let k = self.vars[i];
        for v in [0i8, 1, -1] {
            if v != 0 {
                self.signs[k] = v;
                for j in 0..self.var_pairs[i].len() {
                    self.residual[self.var_pairs[i][j]] -= v as i32;
                }
            }
            self.dfs(i + 1, used + (v != 0) as usize, neg + (v < 0) as usize);
            if v != 0 {
                for j in 0..self.var_pairs[i].len() {
                    self.residual[self.var_pairs[i][j]] += v as i32;
                }
                self.signs[k] = 0;
            }
        }
    }
}

/// Branch-and-bound search. `incumbent` is the score of a known realizing
/// assignment; it only bounds the search, the result does not depend on it.
/// Among optimal assignments the first in search order is returned.
pub(crate) fn solve(layout: &PanelLayout, deltas: &[i32], incumbent: Option<Score>) -> Result<Vec<i8>> {
    let np = layout.frontier_pairs.len();
    if deltas.len() != np {
        return Err(Error::Encoding("signature does not match the panel".into()));
    }
    let constrained: Vec<usize> = (0..np).filter(|&p| !layout.free[p]).collect();
    let cmask: u32 = constrained.iter().map(|&p| 1u32 << p).sum();
    let frontier_slot = |slot: usize| layout.frontier.contains(&slot);

    let mut own_var = vec![None; np];
    let mut shared = Vec::new();
    for (k, &(i, j)) in layout.adjustable.iter().enumerate() {
        let mask = layout.pair_cover[k] & cmask;
        if frontier_slot(i) && frontier_slot(j) {
            if mask != 0 {
                own_var[mask.trailing_zeros() as usize] = Some(k);
            }
        } else if mask != 0 {
            shared.push((k, mask));
        }
    }
    if constrained.iter().any(|&p| own_var[p].is_none()) {
        return Err(Error::Encoding("frontier pair without its own variable".into()));
    }
    // Widest coverage first; ties keep pair order.
    shared.sort_by_key(|&(k, mask)| (std::cmp::Reverse(mask.count_ones()), k));

    let n = shared.len();
    let var_pairs: Vec<Vec<usize>> = shared
        .iter()
        .map(|&(_, mask)| (0..np).filter(|&p| mask & (1 << p) != 0).collect())
        .collect();
    let mut remaining = vec![vec![0u8; np]; n + 1];
    let mut cmax = vec![0usize; n + 1];
    for i in (0..n).rev() {
        remaining[i] = remaining[i + 1].clone();
        for &p in &var_pairs[i] {
            remaining[i][p] += 1;
        }
        cmax[i] = cmax[i + 1].max(var_pairs[i].len());
    }

    let mut residual = vec![0i32; np];
    for &p in &constrained {
        residual[p] = deltas[p];
    }
    let mut search = Search {
        vars: shared.iter().map(|&(k, _)| k).collect(),
        var_pairs,
        own_var,
        constrained,
        remaining,
        cmax,
        residual,
        signs: vec![0; layout.adjustable.len()],
        best: None,
        incumbent,
    };
    search.dfs(0, 0, 0);
    search
        .best
        .map(|(_, signs)| signs)
        .ok_or_else(|| Error::Encoding("signature has no realizing assignment".into()))
}

/// Largest panel the exhaustive oracle accepts.
pub const BRUTE_FORCE_MAX_NODES: usize = 5;

/// Exhaustive search over `{-1, 0, +1}` per adjustable pair, level by
/// level in the number of nonzero pairs, so the first level with a
/// realizing assignment is the optimum. Within it the fewest n-edges win,
/// then the first in enumeration order.
pub(crate) fn brute_force(layout: &PanelLayout, deltas: &[i32]) -> Result<Vec<i8>> {
    if layout.node_count() > BRUTE_FORCE_MAX_NODES {
        return Err(Error::Encoding(format!(
            "panel of {} nodes is too large for exhaustive search",
            layout.node_count()
        )));
    }
    let np = layout.frontier_pairs.len();
    if deltas.len() != np {
        return Err(Error::Encoding("signature does not match the panel".into()));
    }
    let m = layout.adjustable.len();
    let realizes = |signs: &[i8]| {
        let net = layout.deltas_of(signs);
        (0..np).all(|p| layout.free[p] || net[p] == deltas[p])
    };
    for card in 0..=m {
        let mut best: Option<(usize, Vec<i8>)> = None;
        let mut chosen: Vec<usize> = (0..card).collect();
        loop {
            for pattern in 0u32..1 << card {
                let mut signs = vec![0i8; m];
                for (bit, &k) in chosen.iter().enumerate() {
                    signs[k] = if pattern >> bit & 1 == 0 { 1 } else { -1 };
                }
                let neg = pattern.count_ones() as usize;
                if best.as_ref().is_none_or(|(b, _)| neg < *b) && realizes(&signs) {
                    best = Some((neg, signs));
                }
            }
            // Next combination in lexicographic order.
            let Some(i) = (0..card).rev().find(|&i| chosen[i] < m - card + i) else {
                break;
            };
            chosen[i] += 1;
            for j in i + 1..card {
                chosen[j] = chosen[j - 1] + 1;
            }
        }
        if let Some((_, signs)) = best {
            return Ok(signs);
        }
    }
    Err(Error::Encoding("signature has no realizing assignment".into()))
}
