use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use slugger_core::query::{bfs, dfs, neighbor_query_bench, pagerank};
use slugger_core::slugger::{summarize_observed, SummaryRun};
use slugger_core::summary::{
    deserialize, edge_composition, neighbors_of, relative_size, serialize, tree_stats, verify_lossless,
};
use slugger_core::synth::{caveman_graph, er_graph, theorem_graph, TheoremSpec};
use slugger_core::{Error, HierarchicalSummary, InputGraph, SluggerConfig};

use crate::args::{BenchArgs, GenCommand, LabelArgs, RunArgs, SummarizeArgs};
use crate::report::RunReport;

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum Failure {
    /// A summary does not reproduce its graph.
    Verify(String),
    /// Bad arguments or parameters.
    Usage(String),
    /// Unreadable, unwritable or malformed files.
    Io(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Verify(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Verify(m) | Failure::Usage(m) | Failure::Io(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSummary { .. } => Failure::Verify(e.to_string()),
            Error::Domain(_) | Error::Encoding(_) => Failure::Usage(e.to_string()),
            Error::Parse { .. } | Error::Format(_) | Error::Io(_) => Failure::Io(e.to_string()),
        }
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::Io(format!("{}: {e}", path.display()))
}

pub type Outcome = Result<(), Failure>;

fn load_graph(path: &Path) -> Result<InputGraph, Failure> {
    let file = File::open(path).map_err(|e| io_failure(path, e))?;
    InputGraph::load_edge_list(BufReader::new(file)).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load_summary(path: &Path) -> Result<HierarchicalSummary, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    deserialize(&text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Runs `body` against the file at `path`, or stdout when absent.
fn with_output(path: Option<&Path>, body: impl FnOnce(&mut dyn Write) -> std::io::Result<()>) -> Outcome {
    let result = match path {
        Some(p) => {
            let file = File::create(p).map_err(|e| io_failure(p, e))?;
            let mut w = BufWriter::new(file);
            body(&mut w).and_then(|_| w.flush())
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            body(&mut w).and_then(|_| w.flush())
        }
    };
    result.map_err(|e| Failure::Io(e.to_string()))
}

fn config(run: &RunArgs, seed: u64) -> SluggerConfig {
    SluggerConfig {
        iterations: run.iterations,
        max_candidate_size: run.max_candidate_size,
        height_bound: run.height_bound,
        seed,
        pruning_enabled: !run.no_prune,
        ..SluggerConfig::default()
    }
}

fn run_once(g: &InputGraph, cfg: &SluggerConfig, quiet: bool) -> Result<SummaryRun, Failure> {
    let run = summarize_observed(g, cfg, |st, _| {
        if !quiet {
            eprintln!(
                "iter t={} theta={} sets={} merges={} cost={} seconds={:.3}",
                st.t, st.theta, st.candidate_sets, st.merges, st.cost, st.seconds
            );
        }
    })?;
    let check = verify_lossless(&run.summary, g);
    if !check.passed() {
        return Err(Failure::Verify(format!(
            "internal error: summary fails verification ({} violations, first {})",
            check.violation_count,
            check.violations.first().map(ToString::to_string).unwrap_or_default()
        )));
    }
    Ok(run)
}

pub fn summarize(args: &SummarizeArgs) -> Outcome {
    if args.repeat == 0 {
        return Err(Failure::Usage("--repeat must be at least 1".into()));
    }
    let g = load_graph(&args.input)?;
    let mut reports = Vec::with_capacity(args.repeat);
    for r in 0..args.repeat {
        let cfg = config(&args.run, args.run.seed.wrapping_add(r as u64));
        cfg.validate()?;
        let started = Instant::now();
        let run = run_once(&g, &cfg, args.quiet)?;
        let total = started.elapsed().as_secs_f64();
        if r == 0 {
            let text = serialize(&run.summary);
            std::fs::write(&args.output, text).map_err(|e| io_failure(&args.output, e))?;
        }
        reports.push(RunReport::new(&args.input, &g, &cfg, &run, total)?);
    }
    with_output(args.report.as_deref(), |w| RunReport::write_all(&reports, w))
}

pub fn verify(summary: &Path, graph: &Path) -> Outcome {
    let s = load_summary(summary)?;
    let g = load_graph(graph)?;
    let report = verify_lossless(&s, &g);
    if report.passed() {
        println!("ok subnodes={} edges={} cost={}", s.subnode_count(), g.edge_count(), s.cost());
        return Ok(());
    }
    for v in &report.violations {
        println!("violation {v}");
    }
    Err(Failure::Verify(format!("{} violations", report.violation_count)))
}

pub fn stats(summary: &Path, graph: Option<&Path>) -> Outcome {
    let s = load_summary(summary)?;
    let (p, n, h) = if s.cost() == 0 { (0.0, 0.0, 0.0) } else { edge_composition(&s)? };
    let t = tree_stats(&s);
    println!("subnodes={}", s.subnode_count());
    println!("roots={}", t.root_count);
    println!("cost={}", s.cost());
    println!("p_edges={}", s.p_count());
    println!("n_edges={}", s.n_count());
    println!("h_edges={}", s.h_count());
    println!("p_fraction={p:.6}");
    println!("n_fraction={n:.6}");
    println!("h_fraction={h:.6}");
    println!("max_height={}", t.max_height);
    println!("mean_leaf_depth={:.6}", t.mean_leaf_depth);
    if let Some(path) = graph {
        let g = load_graph(path)?;
        println!("edges={}", g.edge_count());
        println!("relative_size={:.6}", relative_size(&s, &g)?);
    }
    Ok(())
}

/// Translation between summary node ids and external labels.
struct Labels {
    to_label: Option<Vec<i64>>,
    from_label: HashMap<i64, u32>,
}

impl Labels {
    fn load(args: &LabelArgs, s: &HierarchicalSummary) -> Result<Self, Failure> {
        let Some(path) = &args.graph else {
            return Ok(Labels { to_label: None, from_label: HashMap::new() });
        };
        let g = load_graph(path)?;
        if g.node_count() != s.subnode_count() {
            return Err(Failure::Usage(format!(
                "{} has {} nodes but the summary has {}",
                path.display(),
                g.node_count(),
                s.subnode_count()
            )));
        }
        let to_label: Vec<i64> = (0..g.node_count() as u32).map(|u| g.label(u)).collect();
        let from_label = to_label.iter().enumerate().map(|(u, &l)| (l, u as u32)).collect();
        Ok(Labels { to_label: Some(to_label), from_label })
    }

    fn id(&self, label: i64) -> Result<u32, Failure> {
        match &self.to_label {
            Some(_) => self
                .from_label
                .get(&label)
                .copied()
                .ok_or_else(|| Failure::Usage(format!("node {label} does not appear in the graph"))),
            None => u32::try_from(label).map_err(|_| Failure::Usage(format!("node id {label} out of range"))),
        }
    }

    fn label(&self, id: u32) -> i64 {
        self.to_label.as_ref().map_or(id as i64, |l| l[id as usize])
    }

    fn join(&self, ids: impl IntoIterator<Item = u32>) -> String {
        ids.into_iter().map(|v| self.label(v).to_string()).collect::<Vec<_>>().join(" ")
    }
}

pub fn neighbors(summary: &Path, node: i64, labels: &LabelArgs) -> Outcome {
    let s = load_summary(summary)?;
    let labels = Labels::load(labels, &s)?;
    let mut out: Vec<i64> = neighbors_of(&s, labels.id(node)?)?.into_iter().map(|v| labels.label(v)).collect();
    out.sort_unstable();
    println!("{}", out.iter().map(i64::to_string).collect::<Vec<_>>().join(" "));
    Ok(())
}

pub fn pagerank_cmd(summary: &Path, damping: f64, iters: usize, top: usize, labels: &LabelArgs) -> Outcome {
    let s = load_summary(summary)?;
    let labels = Labels::load(labels, &s)?;
    let pr = pagerank(&s, damping, iters)?;
    for (v, r) in pr.top(top) {
        println!("{} {r:.12}", labels.label(v));
    }
    Ok(())
}

pub fn dfs_cmd(summary: &Path, start: i64, labels: &LabelArgs) -> Outcome {
    let s = load_summary(summary)?;
    let labels = Labels::load(labels, &s)?;
    println!("{}", labels.join(dfs(&s, labels.id(start)?)?));
    Ok(())
}

pub fn bfs_cmd(summary: &Path, start: i64, labels: &LabelArgs) -> Outcome {
    let s = load_summary(summary)?;
    let labels = Labels::load(labels, &s)?;
    let mut dist: Vec<_> = bfs(&s, labels.id(start)?)?.into_iter().map(|(v, d)| (labels.label(v), d)).collect();
    dist.sort_unstable();
    for (v, d) in dist {
        println!("{v} {d}");
    }
    Ok(())
}

pub fn decode_cmd(summary: &Path, output: Option<&Path>, labels: &LabelArgs) -> Outcome {
    let s = load_summary(summary)?;
    let labels = Labels::load(labels, &s)?;
    let g = slugger_core::summary::decode(&s)?;
    with_output(output, |w| {
        for (u, v) in g.edges() {
            writeln!(w, "{} {}", labels.label(u), labels.label(v))?;
        }
        Ok(())
    })
}

pub fn query_bench(summary: &Path, sample: usize, seed: u64) -> Outcome {
    let s = load_summary(summary)?;
    let b = neighbor_query_bench(&s, sample, seed)?;
    println!("queries={}", b.queries);
    println!("mean_micros={:.3}", b.mean_micros);
    println!("mean_leaf_depth={:.6}", b.mean_leaf_depth);
    Ok(())
}

pub fn bench_scaling(args: &BenchArgs) -> Outcome {
    if args.fractions.is_empty() {
        return Err(Failure::Usage("need at least one fraction".into()));
    }
    let full = load_graph(&args.input)?;
    let cfg = config(&args.run, args.run.seed);
    cfg.validate()?;
    let mut per_edge = Vec::new();
    for &f in &args.fractions {
        let g = full.induced_sample(f, args.sample_seed)?;
        let started = Instant::now();
        run_once(&g, &cfg, true)?;
        let secs = started.elapsed().as_secs_f64();
        println!("fraction={f} nodes={} edges={} seconds={secs:.4}", g.node_count(), g.edge_count());
        if g.edge_count() > 0 {
            per_edge.push(secs / g.edge_count() as f64);
        }
    }
    let worst = per_edge.windows(2).map(|w| w[1] / w[0]).fold(f64::NAN, f64::max);
    if worst.is_nan() {
        println!("max_normalized_ratio=none");
    } else {
        println!("max_normalized_ratio={worst:.4}");
    }
    Ok(())
}

pub fn gen(cmd: &GenCommand) -> Outcome {
    let (g, output) = match cmd {
        GenCommand::Theorem { n, k, output } => (theorem_graph(TheoremSpec { n: *n, k: *k })?, output),
        GenCommand::Er { n, p, seed, output } => (er_graph(*n, *p, *seed)?, output),
        GenCommand::Caveman { cliques, size, seed, output } => (caveman_graph(*cliques, *size, *seed)?, output),
    };
    with_output(output.as_deref(), |w| g.write_edge_list(w))
}
