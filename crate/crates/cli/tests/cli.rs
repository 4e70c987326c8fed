use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use slugger_core::summary::serialize;
use slugger_core::synth::{reference_hier_encoding, TheoremSpec};
use slugger_core::{HierarchicalSummary, InputGraph};
use tempfile::TempDir;

fn slugger(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slugger")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn value<'a>(text: &'a str, key: &str) -> &'a str {
    text.lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .unwrap_or_else(|| panic!("no {key} in output:\n{text}"))
}

fn edge_set(text: &str) -> BTreeSet<(i64, i64)> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let mut it = l.split_whitespace().map(|t| t.parse::<i64>().unwrap());
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            (a.min(b), a.max(b))
        })
        .collect()
}

struct Work {
    dir: TempDir,
}

impl Work {
    fn new() -> Self {
        Work { dir: tempfile::tempdir().unwrap() }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let path = self.path(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn caveman(&self) -> PathBuf {
        let path = self.path("caveman.txt");
        let o = slugger(&["gen", "caveman", "--cliques", "20", "--size", "10", "--seed", "1", "-o", p(&path)]);
        assert_eq!(code(&o), 0);
        path
    }

    fn summarize(&self, graph: &Path, name: &str, extra: &[&str]) -> (PathBuf, String) {
        let out = self.path(name);
        let mut args = vec!["summarize", p(graph), "-o", p(&out), "--quiet"];
        args.extend_from_slice(extra);
        let o = slugger(&args);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        (out, stdout(&o))
    }
}

#[test]
fn gen_fixtures() {
    let o = slugger(&["gen", "theorem", "--n", "4", "--k", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(edge_set(&stdout(&o)), BTreeSet::from([(0, 2), (1, 3)]));
    let o = slugger(&["gen", "er", "--n", "10", "--p", "0"]);
    assert_eq!(stdout(&o), "");
    let o = slugger(&["gen", "caveman", "--cliques", "2", "--size", "3"]);
    assert_eq!(edge_set(&stdout(&o)).len(), 7);
    assert_eq!(code(&slugger(&["gen", "er", "--n", "10", "--p", "1.5"])), 2);
    assert_eq!(code(&slugger(&["gen", "theorem", "--n", "2", "--k", "1"])), 2);
}

#[test]
fn summarize_path_and_verify() {
    let w = Work::new();
    let graph = w.write("path.txt", "0 1\n1 2\n2 3\n3 4\n");
    let (summary, report) = w.summarize(&graph, "path.hsum", &[]);
    let rel: f64 = value(&report, "relative_size").parse().unwrap();
    assert!(rel <= 1.0);
    assert_eq!(value(&report, "edges"), "4");
    let o = slugger(&["verify", p(&summary), p(&graph)]);
    assert_eq!(code(&o), 0);
}

#[test]
fn report_fields_are_consistent() {
    let w = Work::new();
    let graph = w.caveman();
    let (summary, report) = w.summarize(&graph, "c.hsum", &["--iterations", "5"]);
    let num = |k: &str| value(&report, k).parse::<f64>().unwrap();
    assert_eq!(num("cost"), num("p_edges") + num("n_edges") + num("h_edges"));
    assert!((num("relative_size") - num("cost") / num("edges")).abs() < 1e-6);
    assert!((num("p_fraction") + num("n_fraction") + num("h_fraction") - 1.0).abs() < 1e-5);
    assert_eq!(report.lines().filter(|l| l.starts_with("iteration.")).count(), 5);
    // The header of the written file carries the same counts.
    let text = std::fs::read_to_string(&summary).unwrap();
    let header: Vec<f64> = text.lines().nth(1).unwrap().split(' ').map(|t| t.parse().unwrap()).collect();
    assert_eq!(header[2] + header[3] + header[4], num("cost"));
}

#[test]
fn same_seed_gives_identical_files() {
    let w = Work::new();
    let graph = w.caveman();
    let (a, _) = w.summarize(&graph, "a.hsum", &["--seed", "3"]);
    let (b, _) = w.summarize(&graph, "b.hsum", &["--seed", "3"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn more_iterations_do_not_cost_more() {
    let w = Work::new();
    let graph = w.caveman();
    let (_, short) = w.summarize(&graph, "20.hsum", &["--iterations", "20"]);
    let (_, long) = w.summarize(&graph, "80.hsum", &["--iterations", "80"]);
    let cost = |r: &str| value(r, "cost").parse::<usize>().unwrap();
    assert!(cost(&long) <= cost(&short), "{} > {}", cost(&long), cost(&short));
}

#[test]
fn height_bound_and_no_prune_flags() {
    let w = Work::new();
    let graph = w.caveman();
    let (summary, report) = w.summarize(&graph, "h.hsum", &["--height-bound", "1", "--no-prune"]);
    assert_eq!(value(&report, "height_bound"), "1");
    assert_eq!(value(&report, "prune"), "false");
    assert!(!report.contains("prune.splice"));
    let stats = stdout(&slugger(&["stats", p(&summary)]));
    assert!(value(&stats, "max_height").parse::<usize>().unwrap() <= 1);
}

#[test]
fn repeat_and_report_file() {
    let w = Work::new();
    let graph = w.caveman();
    let report = w.path("report.txt");
    let (_, out) = w.summarize(&graph, "r.hsum", &["--repeat", "2", "--iterations", "3", "--report", p(&report)]);
    assert_eq!(out, "");
    let text = std::fs::read_to_string(report).unwrap();
    assert_eq!(value(&text, "run.1.seed"), "0");
    assert_eq!(value(&text, "run.2.seed"), "1");
    let mean: f64 = value(&text, "mean.cost").parse().unwrap();
    let c1: f64 = value(&text, "run.1.cost").parse().unwrap();
    let c2: f64 = value(&text, "run.2.cost").parse().unwrap();
    assert!((mean - (c1 + c2) / 2.0).abs() < 1e-3);
    assert_eq!(code(&slugger(&["summarize", p(&graph), "-o", p(&w.path("x")), "--repeat", "0"])), 2);
}

#[test]
fn verify_rejects_a_deleted_p_edge() {
    let w = Work::new();
    let graph = w.caveman();
    let (summary, _) = w.summarize(&graph, "c.hsum", &[]);
    let text = std::fs::read_to_string(&summary).unwrap();
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    let victim = lines.iter().position(|l| l.starts_with("P ")).unwrap();
    lines.remove(victim);
    let mut header: Vec<usize> = lines[1].split(' ').map(|t| t.parse().unwrap()).collect();
    header[2] -= 1;
    lines[1] = header.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ");
    let broken = w.write("broken.hsum", &(lines.join("\n") + "\n"));
    let o = slugger(&["verify", p(&broken), p(&graph)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).contains("violation"));
}

#[test]
fn verify_accepts_reference_encoding() {
    let w = Work::new();
    let spec = TheoremSpec { n: 8, k: 2 };
    let summary = w.write("ref.hsum", &serialize(&reference_hier_encoding(spec).unwrap()));
    let edges = stdout(&slugger(&["gen", "theorem", "--n", "8", "--k", "2"]));
    // Self-loop lines are dropped but still fix first-appearance order, so
    // file labels equal the reference ids.
    let preamble: String = (0..16).map(|v| format!("{v} {v}\n")).collect();
    let graph = w.write("thm.txt", &(preamble + &edges));
    assert_eq!(code(&slugger(&["verify", p(&summary), p(&graph)])), 0);
    let shuffled = w.write("thm_raw.txt", &edges);
    assert_eq!(code(&slugger(&["verify", p(&summary), p(&shuffled)])), 1);
}

#[test]
fn stats_of_trivial_summary() {
    let w = Work::new();
    let g = InputGraph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
    let summary = w.write("t.hsum", &serialize(&HierarchicalSummary::trivial(&g)));
    let o = stdout(&slugger(&["stats", p(&summary)]));
    assert_eq!(value(&o, "p_fraction"), "1.000000");
    assert_eq!(value(&o, "n_fraction"), "0.000000");
    assert_eq!(value(&o, "h_fraction"), "0.000000");
    assert_eq!(value(&o, "max_height"), "0");
    assert_eq!(value(&o, "mean_leaf_depth"), "0.000000");
}

#[test]
fn decode_round_trips() {
    let w = Work::new();
    let graph = w.caveman();
    let (summary, _) = w.summarize(&graph, "c.hsum", &[]);
    let decoded = w.path("decoded.txt");
    assert_eq!(code(&slugger(&["decode", p(&summary), "-o", p(&decoded), "--graph", p(&graph)])), 0);
    let original = edge_set(&std::fs::read_to_string(&graph).unwrap());
    assert_eq!(edge_set(&std::fs::read_to_string(&decoded).unwrap()), original);
}

#[test]
fn queries_translate_labels() {
    let w = Work::new();
    // Internal ids follow first appearance: 30 -> 0, 10 -> 1, 20 -> 2, 40 -> 3.
    let graph = w.write("labels.txt", "30 10\n10 20\n20 40\n");
    let (summary, _) = w.summarize(&graph, "l.hsum", &[]);
    let g = ["--graph", p(&graph)];
    let run = |args: &[&str]| stdout(&slugger(&[args, &g[..]].concat()));
    assert_eq!(run(&["neighbors", p(&summary), "--node", "20"]).trim(), "10 40");
    assert_eq!(stdout(&slugger(&["neighbors", p(&summary), "--node", "2"])).trim(), "1 3");
    assert_eq!(run(&["dfs", p(&summary), "--start", "30"]).trim(), "30 10 20 40");
    assert!(run(&["bfs", p(&summary), "--start", "30"]).lines().any(|l| l == "40 3"));
    assert_eq!(code(&slugger(&[&["neighbors", p(&summary), "--node", "5"][..], &g[..]].concat())), 2);
    let decoded = run(&["decode", p(&summary)]);
    assert_eq!(edge_set(&decoded), edge_set("10 30\n10 20\n20 40\n"));
    let other = w.write("other.txt", "0 1\n");
    assert_eq!(code(&slugger(&["decode", p(&summary), "--graph", p(&other)])), 2);
}

#[test]
fn queries_on_a_summary() {
    let w = Work::new();
    // Star with hub 0; ids appear in ascending order so labels equal ids.
    let star: String = (1..8).map(|v| format!("0 {v}\n")).collect();
    let graph = w.write("star.txt", &star);
    let (summary, _) = w.summarize(&graph, "s.hsum", &[]);
    let top = stdout(&slugger(&["pagerank", p(&summary), "--top", "1"]));
    assert!(top.starts_with("0 "), "{top}");
    assert_eq!(stdout(&slugger(&["neighbors", p(&summary), "--node", "0"])).trim(), "1 2 3 4 5 6 7");
    assert_eq!(stdout(&slugger(&["neighbors", p(&summary), "--node", "4"])).trim(), "0");
    assert_eq!(stdout(&slugger(&["dfs", p(&summary), "--start", "3"])).trim(), "3 0 1 2 4 5 6 7");
    let bfs = stdout(&slugger(&["bfs", p(&summary), "--start", "3"]));
    assert_eq!(bfs.lines().next(), Some("0 1"));
    assert!(bfs.lines().any(|l| l == "3 0"));
    assert_eq!(code(&slugger(&["neighbors", p(&summary), "--node", "8"])), 2);
    assert_eq!(code(&slugger(&["dfs", p(&summary), "--start", "99"])), 2);
    let bench = stdout(&slugger(&["query-bench", p(&summary), "--sample", "5"]));
    assert_eq!(value(&bench, "queries"), "5");
}

#[test]
fn exit_codes() {
    let w = Work::new();
    let missing = w.path("nope.txt");
    assert_eq!(code(&slugger(&["stats", p(&missing)])), 3);
    let garbage = w.write("bad.hsum", "not a summary\n");
    assert_eq!(code(&slugger(&["stats", p(&garbage)])), 3);
    let bad_graph = w.write("bad.txt", "0 x\n");
    assert_eq!(code(&slugger(&["summarize", p(&bad_graph), "-o", p(&w.path("o"))])), 3);
    assert_eq!(code(&slugger(&["frobnicate"])), 2);
    assert_eq!(code(&slugger(&["summarize"])), 2);
    let graph = w.write("g.txt", "0 1\n");
    assert_eq!(code(&slugger(&["summarize", p(&graph), "-o", p(&w.path("o")), "--iterations", "0"])), 2);
}

#[test]
fn bench_scaling_rows() {
    let w = Work::new();
    let graph = w.caveman();
    let o = stdout(&slugger(&["bench-scaling", p(&graph), "--iterations", "3"]));
    assert_eq!(o.lines().filter(|l| l.starts_with("fraction=")).count(), 4);
    assert!(value(&o, "max_normalized_ratio").parse::<f64>().is_ok());
    let again = stdout(&slugger(&["bench-scaling", p(&graph), "--iterations", "3"]));
    let shapes = |t: &str| -> Vec<String> {
        t.lines().filter(|l| l.starts_with("fraction=")).map(|l| l.split(" seconds").next().unwrap().to_string()).collect()
    };
    assert_eq!(shapes(&o), shapes(&again));
}
