//! The summarization pipeline: candidate generation, threshold-scheduled
//! greedy merging and pruning.

mod candidates;
mod engine;
mod prune;

pub use candidates::{generate_candidates, round_seed, shingle, subnode_hash};
pub use engine::{MergeCosts, MergeEngine, Saving};
pub use prune::{flatten_root_pairs, prune, push_down_single_edges, splice_edgeless, PruneStats};

use std::time::Instant;

use num_rational::Ratio;
use rand::Rng;

use crate::encoder::{MemoStats, MemoTable};
use crate::error::{domain, Result};
use crate::graph::InputGraph;
use crate::rng;
use crate::summary::{HierarchicalSummary, SupernodeId};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SluggerConfig {
    /// Number of merging iterations `T`.
    pub iterations: usize,
    pub max_candidate_size: usize,
    pub max_shingle_rounds: usize,
    /// Maximum tree height; merges exceeding it are refused.
    pub height_bound: Option<usize>,
    pub seed: u64,
    pub pruning_enabled: bool,
}

impl Default for SluggerConfig {
    fn default() -> Self {
        SluggerConfig {
            iterations: 20,
            max_candidate_size: 500,
            max_shingle_rounds: 10,
            height_bound: None,
            seed: 0,
            pruning_enabled: true,
        }
    }
}

impl SluggerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iterations < 1 {
            return domain("iterations must be at least 1");
        }
        if self.max_candidate_size < 2 {
            return domain("max candidate size must be at least 2");
        }
        if self.max_shingle_rounds < 1 {
            return domain("max shingle rounds must be at least 1");
        }
        Ok(())
    }
}

/// Merging threshold: `1 / (1 + t)` before the last iteration, 0 at `t = T`.
pub fn theta(t: usize, total: usize) -> Result<Ratio<i64>> {
    if t < 1 || t > total {
        return domain(format!("iteration {t} outside 1..={total}"));
    }
    Ok(if t == total { Ratio::from_integer(0) } else { Ratio::new(1, 1 + t as i64) })
}

/// One pass over a candidate set: repeatedly take a random root `A`, find
/// the best partner `B` (ties to the lowest id) and merge when the saving
/// reaches the threshold. Stale members are skipped. Returns the merge count.
pub fn merge_step(
    engine: &mut MergeEngine,
    set: &[SupernodeId],
    t: usize,
    set_index: usize,
    cfg: &SluggerConfig,
) -> Result<usize> {
    let threshold = theta(t, cfg.iterations)?;
    let mut rng = rng::stream(cfg.seed, rng::TAG_PICK, t as u64, set_index as u64);
    let mut queue: Vec<SupernodeId> = set.iter().copied().filter(|&x| engine.is_root(x)).collect();
    let mut merges = 0;
    while queue.len() > 1 {
        let a = queue.swap_remove(rng.gen_range(0..queue.len()));
        let mut best: Option<(Ratio<i64>, SupernodeId, usize)> = None;
        for (i, &z) in queue.iter().enumerate() {
            let Some(saving) = engine.saving(a, z)? else { continue };
            let better = match &best {
                None => true,
                Some((bs, bz, _)) => saving > *bs || (saving == *bs && z < *bz),
            };
            if better {
                best = Some((saving, z, i));
            }
        }
        if let Some((saving, b, i)) = best {
            if saving >= threshold {
                if let Some(m) = engine.merge_and_update(a, b)? {
                    queue[i] = m;
                    merges += 1;
                }
            }
        }
    }
    Ok(merges)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationStats {
    pub t: usize,
    pub theta: Ratio<i64>,
    pub candidate_sets: usize,
    pub merges: usize,
    pub cost: usize,
    pub seconds: f64,
}

/// Everything a summarization run produced.
#[derive(Clone, Debug)]
pub struct SummaryRun {
    pub summary: HierarchicalSummary,
    pub iterations: Vec<IterationStats>,
    pub pruning: Option<PruneStats>,
    pub merges: usize,
    pub memo: MemoStats,
    pub merge_seconds: f64,
    pub prune_seconds: f64,
}

/// Runs the pipeline, calling `observe` after every iteration with the
/// iteration's statistics and the summary as it stands.
pub fn summarize_observed(
    g: &InputGraph,
    cfg: &SluggerConfig,
    mut observe: impl FnMut(&IterationStats, &HierarchicalSummary),
) -> Result<SummaryRun> {
    cfg.validate()?;
    let started = Instant::now();
    let mut engine = MergeEngine::new(HierarchicalSummary::trivial(g), MemoTable::new(), cfg.height_bound);
    let mut iterations = Vec::with_capacity(cfg.iterations);
    for t in 1..=cfg.iterations {
        let t0 = Instant::now();
        let sets = generate_candidates(engine.summary(), g, t, cfg);
        let mut merges = 0;
        for (i, set) in sets.iter().enumerate() {
            merges += merge_step(&mut engine, set, t, i, cfg)?;
        }
        let stats = IterationStats {
            t,
            theta: theta(t, cfg.iterations)?,
            candidate_sets: sets.len(),
            merges,
            cost: engine.summary().cost(),
            seconds: t0.elapsed().as_secs_f64(),
        };
        observe(&stats, engine.summary());
        iterations.push(stats);
    }
    let merges = engine.merges();
    let (mut summary, memo) = engine.into_parts();
    let merge_seconds = started.elapsed().as_secs_f64();
    let t1 = Instant::now();
    let pruning = if cfg.pruning_enabled {
        Some(prune(&mut summary, g)?)
    } else {
        summary.compact();
        None
    };
    Ok(SummaryRun {
        summary,
        iterations,
        pruning,
        merges,
        memo: memo.stats(),
        merge_seconds,
        prune_seconds: t1.elapsed().as_secs_f64(),
    })
}

pub fn summarize(g: &InputGraph, cfg: &SluggerConfig) -> Result<HierarchicalSummary> {
    Ok(summarize_observed(g, cfg, |_, _| {})?.summary)
}
