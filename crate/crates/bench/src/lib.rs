//! Shared fixtures for the benchmarks.

use slugger_core::synth::{caveman_graph, er_graph, theorem_graph, TheoremSpec};
use slugger_core::{summarize, HierarchicalSummary, InputGraph, SluggerConfig};

/// Named graphs used across benches, small enough for criterion's sampling.
pub fn fixtures() -> Vec<(&'static str, InputGraph)> {
    vec![
        ("theorem_32_3", theorem_graph(TheoremSpec { n: 32, k: 3 }).expect("valid parameters")),
        ("caveman_20_10", caveman_graph(20, 10, 1).expect("valid caveman")),
        ("er_1000_0.01", er_graph(1000, 0.01, 3).expect("valid er")),
    ]
}

pub fn config(seed: u64) -> SluggerConfig {
    SluggerConfig { seed, ..SluggerConfig::default() }
}

/// Each fixture with its default-config summary.
pub fn summarized() -> Vec<(&'static str, InputGraph, HierarchicalSummary)> {
    fixtures()
        .into_iter()
        .map(|(name, g)| {
            let s = summarize(&g, &config(0)).expect("summarize");
            (name, g, s)
        })
        .collect()
}
