use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use hasm_core::exact::format_rational;
use hasm_core::renewal::{reduce_gn_once_with, replay, ReduceOptions, ReductionTrace};

use crate::Guard;

#[derive(Args)]
pub struct ReduceArgs {
    /// Reduce G_n to the mirrored G_{n-1}.
    #[arg(long, required_unless_present = "replay")]
    n: Option<usize>,
    /// Write the step trace as JSON.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Re-run a saved trace and check every recorded factor.
    #[arg(long, conflicts_with_all = ["n", "trace"])]
    replay: Option<PathBuf>,
    /// Skip the per-step matching-sum check.
    #[arg(long)]
    no_verify: bool,
    /// Print one line per step.
    #[arg(long, short)]
    verbose: bool,
}

fn print_steps(t: &ReductionTrace) {
    for (k, s) in t.steps.iter().enumerate() {
        println!("{k:>3} {:<11} factor {:<8} cumulative {}", s.op.name(), format_rational(&s.factor), format_rational(&s.cumulative));
    }
}

pub fn run(args: &ReduceArgs, guard: Guard) -> Result<bool> {
    let verify = !args.no_verify;
    if let Some(path) = &args.replay {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let trace: ReductionTrace = serde_json::from_str(&text).context("parsing trace")?;
        guard.check("n", trace.n)?;
        if args.verbose {
            print_steps(&trace);
        }
        return match replay(&trace, verify) {
            Ok(r) => {
                println!("replayed {} steps for n={}: cumulative factor {}", trace.steps.len(), trace.n, format_rational(&r.cumulative));
                Ok(true)
            }
            Err(e) => {
                println!("replay failed: {e}");
                Ok(false)
            }
        };
    }
    let n = args.n.expect("clap requires n without --replay");
    if n < 2 {
        bail!("reduction needs n >= 2");
    }
    guard.check("n", n)?;
    let r = match reduce_gn_once_with(n, &ReduceOptions { verify_steps: verify }) {
        Ok(r) => r,
        Err(e) => {
            println!("reduction failed: {e}");
            return Ok(false);
        }
    };
    if args.verbose {
        print_steps(&r.trace);
    }
    if let Some(path) = &args.trace {
        std::fs::write(path, serde_json::to_string_pretty(&r.trace)? + "\n")
            .with_context(|| format!("writing {}", path.display()))?;
    }
    println!("{}", format_rational(&r.trace.cumulative));
    Ok(r.trace.final_isomorphic)
}
