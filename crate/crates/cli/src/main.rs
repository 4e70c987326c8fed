mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Summarize(a) => commands::summarize(a),
        Command::Verify { summary, graph } => commands::verify(summary, graph),
        Command::Stats { summary, graph } => commands::stats(summary, graph.as_deref()),
        Command::Neighbors { summary, node, labels } => commands::neighbors(summary, *node, labels),
        Command::Pagerank { summary, damping, iters, top, labels } => {
            commands::pagerank_cmd(summary, *damping, *iters, *top, labels)
        }
        Command::Dfs { summary, start, labels } => commands::dfs_cmd(summary, *start, labels),
        Command::Bfs { summary, start, labels } => commands::bfs_cmd(summary, *start, labels),
        Command::Decode { summary, output, labels } => commands::decode_cmd(summary, output.as_deref(), labels),
        Command::QueryBench { summary, sample, seed } => commands::query_bench(summary, *sample, *seed),
        Command::BenchScaling(a) => commands::bench_scaling(a),
        Command::Gen(g) => commands::gen(g),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("slugger: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}
