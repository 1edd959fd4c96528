mod enumerate;
mod graphs;
mod reduce;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use graphs::GraphSpec;

#[derive(Parser)]
#[command(name = "hasm", version, about = "Exact 2-enumerations of halved ASMs and the matching counts behind them")]
struct Cli {
    #[command(flatten)]
    guard: Guard,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct Guard {
    /// Largest size parameter accepted without --force.
    #[arg(long, env = "HASM_MAX_N", default_value_t = 4, global = true)]
    max_n: usize,
    /// Run past the size ceiling.
    #[arg(long, global = true)]
    force: bool,
}

impl Guard {
    pub fn check(&self, what: &str, n: usize) -> Result<()> {
        if n > self.max_n && !self.force {
            bail!("{what} = {n} is above the ceiling {} (raise HASM_MAX_N or pass --force)", self.max_n);
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Brute,
    Pfaffian,
    Both,
    /// Brute force up to 34 vertices, Pfaffian above.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Check an identity by every available route.
    Verify(verify::VerifyArgs),
    /// Print the weighted perfect-matching sum of a graph.
    Count {
        #[command(subcommand)]
        graph: GraphSpec,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto, global = true)]
        engine: EngineArg,
    },
    /// List halved ASMs with their statistics.
    Enumerate(enumerate::EnumerateArgs),
    /// Run the scripted one-step reduction of G_n, or replay a saved trace.
    Reduce(reduce::ReduceArgs),
    /// Write a graph as JSON.
    ExportGraph {
        #[command(subcommand)]
        graph: GraphSpec,
        #[arg(long, short, global = true)]
        out: Option<PathBuf>,
    },
}

/// Output status: `Ok(true)` when every check held.
fn run(cli: Cli) -> Result<bool> {
    let guard = cli.guard;
    match cli.command {
        Command::Verify(args) => verify::run(&args, guard),
        Command::Count { graph, engine } => {
            let g = graph.build(guard)?;
            println!("{}", graphs::count(&g, engine)?);
            Ok(true)
        }
        Command::Enumerate(args) => enumerate::run(&args, guard),
        Command::Reduce(args) => reduce::run(&args, guard),
        Command::ExportGraph { graph, out } => {
            let g = graph.build(guard)?;
            let json = serde_json::to_string_pretty(&g)? + "\n";
            match out {
                Some(path) => std::fs::write(path, json)?,
                None => print!("{json}"),
            }
            Ok(true)
        }
    }
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
