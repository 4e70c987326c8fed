//! Exact outputs of the default configuration (seed 0), frozen after the
//! first verified run. A change here means the algorithm's decisions changed.

mod common;

use slugger_core::{summarize, SluggerConfig};

/// (graph, cost, p-edges, n-edges, h-edges)
const FROZEN: &[(&str, usize, usize, usize, usize)] = &[
    ("theorem(4,1)", 2, 2, 0, 0),
    ("path(40)", 39, 39, 0, 0),
    ("star(30)", 29, 29, 0, 0),
    ("clique(12)", 13, 2, 0, 11),
    ("theorem(16,2)", 71, 13, 7, 51),
    ("theorem(32,3)", 234, 67, 13, 154),
    ("caveman(20,10)", 253, 61, 0, 192),
    ("er(200,0.05)", 954, 849, 0, 105),
    ("er(1000,0.01)", 5001, 4733, 0, 268),
];

#[test]
fn default_run_costs_are_frozen() {
    let corpus = common::corpus();
    assert_eq!(corpus.len(), FROZEN.len());
    for &(name, cost, p, n, h) in FROZEN {
        let g = common::corpus_graph(name);
        let s = summarize(&g, &SluggerConfig::default()).unwrap();
        assert!(common::represents(&s, &g), "{name}");
        assert_eq!((s.cost(), s.p_count(), s.n_count(), s.h_count()), (cost, p, n, h), "{name}");
    }
}

#[test]
fn same_seed_same_summary() {
    let g = common::corpus_graph("caveman(20,10)");
    let cfg = SluggerConfig { seed: 9, ..SluggerConfig::default() };
    assert_eq!(summarize(&g, &cfg).unwrap(), summarize(&g, &cfg).unwrap());
}
