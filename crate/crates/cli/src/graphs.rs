use anyhow::{bail, Context, Result};
use clap::Subcommand;
use hasm_core::asm::BottomSpec;
use hasm_core::builders::*;
use hasm_core::exact::format_rational;
use hasm_core::matchings::{matching_sum, matching_sum_auto, Engine};
use hasm_core::{Rational, WeightedGraph};

use crate::{EngineArg, Guard};

#[derive(Subcommand, Clone, Debug)]
pub enum GraphSpec {
    /// The weighted graph G_n.
    Gn {
        #[arg(long)]
        n: usize,
        /// Reflect across the vertical axis.
        #[arg(long)]
        mirror: bool,
    },
    /// Aztec diamond of order n with n bottom teeth.
    Teeth {
        #[arg(long)]
        n: usize,
    },
    /// m x k Aztec rectangle, optionally keeping only some bottom vertices.
    AztecRect {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Comma-separated kept bottom positions in 1..=k, m of them.
        #[arg(long, value_delimiter = ',')]
        keep: Option<Vec<usize>>,
    },
    /// n x 2n fortress with pending bottom edges set by c.
    Fortress {
        #[arg(long)]
        n: usize,
        /// Comma-separated c_i values, each n-1 or n+1.
        #[arg(long)]
        bottom: String,
        /// Add pendant paths under bare bottom cells.
        #[arg(long)]
        normalize: bool,
    },
}

impl GraphSpec {
    pub fn build(&self, guard: Guard) -> Result<WeightedGraph> {
        Ok(match self {
            GraphSpec::Gn { n, mirror } => {
                positive("n", *n)?;
                guard.check("n", *n)?;
                let g = build_gn(*n);
                if *mirror {
                    g.mirror()
                } else {
                    g
                }
            }
            GraphSpec::Teeth { n } => {
                positive("n", *n)?;
                guard.check("n", *n)?;
                build_teeth_region(*n)
            }
            GraphSpec::AztecRect { m, k, keep } => {
                positive("m", *m)?;
                guard.check("m", *m)?;
                if *k < *m {
                    bail!("k must be at least m");
                }
                match keep {
                    None => build_aztec_rectangle(*m, *k),
                    Some(xs) => {
                        let xs = KeptPositions::new(xs.clone(), *k)?;
                        build_aztec_rectangle_kept_bottom(*m, *k, &xs)?
                    }
                }
            }
            GraphSpec::Fortress { n, bottom, normalize } => {
                positive("n", *n)?;
                guard.check("n", *n)?;
                let spec: BottomSpec = bottom.parse().context("--bottom")?;
                let g = build_fortress(*n, &spec)?;
                if *normalize {
                    normalize_fortress_bottom(&g)
                } else {
                    g
                }
            }
        })
    }
}

fn positive(name: &str, v: usize) -> Result<()> {
    if v == 0 {
        bail!("{name} must be at least 1");
    }
    Ok(())
}

/// Matching sums by the chosen engines, in brute, Pfaffian order.
pub fn sums(g: &WeightedGraph, engine: EngineArg) -> Result<Vec<(&'static str, Rational)>> {
    Ok(match engine {
        EngineArg::Brute => vec![("brute", matching_sum(g, Engine::Brute)?)],
        EngineArg::Pfaffian => vec![("pfaffian", matching_sum(g, Engine::Pfaffian)?)],
        EngineArg::Both => vec![
            ("brute", matching_sum(g, Engine::Brute)?),
            ("pfaffian", matching_sum(g, Engine::Pfaffian)?),
        ],
        EngineArg::Auto => vec![("auto", matching_sum_auto(g)?)],
    })
}

/// One value, failing if two engines disagree.
pub fn count(g: &WeightedGraph, engine: EngineArg) -> Result<String> {
    let s = sums(g, engine)?;
    if let [(_, a), (_, b)] = s.as_slice() {
        if a != b {
            bail!("engines disagree: brute {}, pfaffian {}", format_rational(a), format_rational(b));
        }
    }
    Ok(format_rational(&s[0].1))
}
