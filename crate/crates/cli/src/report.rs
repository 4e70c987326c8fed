use std::io::{self, Write};
use std::path::{Path, PathBuf};

use slugger_core::slugger::SummaryRun;
use slugger_core::summary::{edge_composition, relative_size};
use slugger_core::{InputGraph, SluggerConfig};

/// Everything `summarize` reports about one run, written as `key=value` lines.
#[derive(Clone, Debug)]
pub struct RunReport {
    pub input: PathBuf,
    pub nodes: usize,
    pub edges: usize,
    pub config: SluggerConfig,
    pub cost: usize,
    pub p_edges: usize,
    pub n_edges: usize,
    pub h_edges: usize,
    pub relative_size: f64,
    pub composition: (f64, f64, f64),
    pub merges: usize,
    pub memo_entries: usize,
    pub memo_hit_rate: f64,
    /// Cost after each iteration.
    pub trace: Vec<usize>,
    /// Cost after splice, push-down and flattening, when pruning ran.
    pub prune_trace: Option<[usize; 3]>,
    pub merge_seconds: f64,
    pub prune_seconds: f64,
    pub total_seconds: f64,
}

impl RunReport {
    pub fn new(
        input: &Path,
        g: &InputGraph,
        config: &SluggerConfig,
        run: &SummaryRun,
        total_seconds: f64,
    ) -> slugger_core::Result<Self> {
        let s = &run.summary;
        let relative = if g.edge_count() == 0 { 0.0 } else { relative_size(s, g)? };
        let composition = if s.cost() == 0 { (0.0, 0.0, 0.0) } else { edge_composition(s)? };
        Ok(RunReport {
            input: input.to_path_buf(),
            nodes: g.node_count(),
            edges: g.edge_count(),
            config: config.clone(),
            cost: s.cost(),
            p_edges: s.p_count(),
            n_edges: s.n_count(),
            h_edges: s.h_count(),
            relative_size: relative,
            composition,
            merges: run.merges,
            memo_entries: run.memo.entries,
            memo_hit_rate: run.memo.hit_rate,
            trace: run.iterations.iter().map(|it| it.cost).collect(),
            prune_trace: run.pruning.map(|p| [p.after_splice, p.after_push_down, p.after_flat]),
            merge_seconds: run.merge_seconds,
            prune_seconds: run.prune_seconds,
            total_seconds,
        })
    }

    fn write(&self, prefix: &str, w: &mut dyn Write) -> io::Result<()> {
        let c = &self.config;
        let height = c.height_bound.map_or("none".to_string(), |h| h.to_string());
        writeln!(w, "{prefix}input={}", self.input.display())?;
        writeln!(w, "{prefix}nodes={}", self.nodes)?;
        writeln!(w, "{prefix}edges={}", self.edges)?;
        writeln!(w, "{prefix}seed={}", c.seed)?;
        writeln!(w, "{prefix}iterations={}", c.iterations)?;
        writeln!(w, "{prefix}max_candidate_size={}", c.max_candidate_size)?;
        writeln!(w, "{prefix}height_bound={height}")?;
        writeln!(w, "{prefix}prune={}", c.pruning_enabled)?;
        writeln!(w, "{prefix}cost={}", self.cost)?;
        writeln!(w, "{prefix}p_edges={}", self.p_edges)?;
        writeln!(w, "{prefix}n_edges={}", self.n_edges)?;
        writeln!(w, "{prefix}h_edges={}", self.h_edges)?;
        writeln!(w, "{prefix}relative_size={:.6}", self.relative_size)?;
        writeln!(w, "{prefix}p_fraction={:.6}", self.composition.0)?;
        writeln!(w, "{prefix}n_fraction={:.6}", self.composition.1)?;
        writeln!(w, "{prefix}h_fraction={:.6}", self.composition.2)?;
        writeln!(w, "{prefix}merges={}", self.merges)?;
        writeln!(w, "{prefix}memo_entries={}", self.memo_entries)?;
        writeln!(w, "{prefix}memo_hit_rate={:.6}", self.memo_hit_rate)?;
        for (t, cost) in self.trace.iter().enumerate() {
            writeln!(w, "{prefix}iteration.{}.cost={cost}", t + 1)?;
        }
        if let Some([splice, push, flat]) = self.prune_trace {
            writeln!(w, "{prefix}prune.splice.cost={splice}")?;
            writeln!(w, "{prefix}prune.push_down.cost={push}")?;
            writeln!(w, "{prefix}prune.flatten.cost={flat}")?;
        }
        writeln!(w, "{prefix}merge_seconds={:.4}", self.merge_seconds)?;
        writeln!(w, "{prefix}prune_seconds={:.4}", self.prune_seconds)?;
        writeln!(w, "{prefix}total_seconds={:.4}", self.total_seconds)
    }

    /// A single run is written bare; several get `run.<k>.` prefixes and
    /// `mean.` rows.
    pub fn write_all(reports: &[RunReport], w: &mut dyn Write) -> io::Result<()> {
        if let [only] = reports {
            return only.write("", w);
        }
        for (k, r) in reports.iter().enumerate() {
            r.write(&format!("run.{}.", k + 1), w)?;
        }
        let n = reports.len() as f64;
        let mean = |f: fn(&RunReport) -> f64| reports.iter().map(f).sum::<f64>() / n;
        writeln!(w, "mean.cost={:.4}", mean(|r| r.cost as f64))?;
        writeln!(w, "mean.relative_size={:.6}", mean(|r| r.relative_size))?;
        writeln!(w, "mean.merge_seconds={:.4}", mean(|r| r.merge_seconds))?;
        writeln!(w, "mean.prune_seconds={:.4}", mean(|r| r.prune_seconds))?;
        writeln!(w, "mean.total_seconds={:.4}", mean(|r| r.total_seconds))
    }
}
