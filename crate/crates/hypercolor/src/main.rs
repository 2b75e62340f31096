use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hypercolor::commands::{self, EdgeOrder, RunConfig};
use hypercolor::report::Report;
use hypercolor_core::verify::Strategy;

/// Exact chromatic and list-coloring counts of uniform hypergraphs.
#[derive(Debug, Parser)]
#[command(name = "hypercolor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chromatic polynomial three ways, with the stratum table.
    Poly(Flags),
    /// δ-cycles, broken cycles and strata counts.
    Cycles(Flags),
    /// Number of L-colorings three ways, with α and f_i terms.
    Listcount(Flags),
    /// Threshold, minimizer search and lemma checks.
    Verify(Flags),
    /// d-improper counts through the star hypergraph.
    Improper(Flags),
    /// Threshold (m-1)/ln(1+√2) and the least k above it.
    Threshold(Flags),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SortArg {
    Lex,
    Input,
}

#[derive(Debug, Args)]
struct Flags {
    /// Hypergraph (or graph) file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// List-assignment file.
    #[arg(long)]
    lists: Option<PathBuf>,
    #[arg(short)]
    k: Option<usize>,
    /// Allowed same-colored neighbours per vertex.
    #[arg(short)]
    d: Option<usize>,
    /// Number of edges, for `threshold` without an input file.
    #[arg(short)]
    m: Option<usize>,
    /// Color universe size; defaults to k + 2.
    #[arg(long)]
    universe: Option<usize>,
    #[arg(long, value_enum)]
    strategy: Option<StrategyArg>,
    /// Random assignments besides the constant one.
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..=24))]
    max_edges: u64,
    /// Write the JSON report here; `-` for stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "input")]
    sort_edges: SortArg,
    /// Worker threads; defaults to one per core.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

impl Flags {
    fn config(&self) -> RunConfig {
        RunConfig {
            input: self.input.clone(),
            lists: self.lists.clone(),
            k: self.k,
            d: self.d,
            m: self.m,
            universe: self.universe,
            strategy: self.strategy.map(|s| match s {
                StrategyArg::Exhaustive => Strategy::ExhaustiveCanonical,
                StrategyArg::Random => Strategy::Random,
            }),
            samples: self.samples,
            seed: self.seed,
            max_edges: self.max_edges as usize,
            edge_order: match self.sort_edges {
                SortArg::Lex => EdgeOrder::Lex,
                SortArg::Input => EdgeOrder::Input,
            },
            threads: self.threads.map(|t| t as usize),
        }
    }
}

fn emit(report: &Report, json: Option<&PathBuf>) -> Result<()> {
    let text = match json {
        Some(path) if path.as_os_str() == "-" => report.to_json() + "\n",
        Some(path) => {
            fs::write(path, report.to_json() + "\n").with_context(|| format!("writing {}", path.display()))?;
            report.summary()
        }
        None => report.summary(),
    };
    let mut out = io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
        // a closed pipe (`| head`) is not an error worth reporting
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn run(cli: Cli) -> Result<bool> {
    let (flags, command): (&Flags, fn(&RunConfig) -> Result<Report>) = match &cli.command {
        Command::Poly(f) => (f, commands::cmd_poly),
        Command::Cycles(f) => (f, commands::cmd_cycles),
        Command::Listcount(f) => (f, commands::cmd_listcount),
        Command::Verify(f) => (f, commands::cmd_verify),
        Command::Improper(f) => (f, commands::cmd_improper),
        Command::Threshold(f) => (f, commands::cmd_threshold),
    };
    let report = command(&flags.config())?;
    emit(&report, flags.json.as_ref())?;
    Ok(report.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
