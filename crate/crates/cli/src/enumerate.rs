use anyhow::{bail, Context, Result};
use clap::Args;
use hasm_core::asm::{map_halved_asms, weight_stats, AsmLike, BottomHeight, BottomSpec, WeightStats};
use serde::Serialize;

use crate::{Format, Guard};

#[derive(Args)]
pub struct EnumerateArgs {
    #[arg(long)]
    n: usize,
    /// Pin every bottom height: n-1 or n+1.
    #[arg(long, conflicts_with = "bottom")]
    fix_c: Option<String>,
    /// Per-position bottom heights, comma-separated `*`, `n-1` or `n+1`.
    #[arg(long)]
    bottom: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Serialize)]
struct Entry {
    index: usize,
    rows: Vec<Vec<i8>>,
    bottom: Vec<BottomHeight>,
    stats: WeightStats,
    minus_weight: String,
    parity_weight: String,
}

#[derive(Serialize)]
struct Listing {
    n: usize,
    bottom: String,
    count: usize,
    asms: Vec<Entry>,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    index: usize,
    rows: String,
    bottom: String,
    n_minus: u32,
    n_minus_even: u32,
    n_minus_odd: u32,
    n_plus_even: u32,
    n_plus_odd: u32,
    minus_weight: &'a str,
    parity_weight: &'a str,
}

fn spec(args: &EnumerateArgs) -> Result<BottomSpec> {
    let n = args.n;
    let spec = match (&args.fix_c, &args.bottom) {
        (Some(c), _) => BottomSpec::all(n, c.parse().context("--fix-c")?),
        (None, Some(b)) => b.parse().context("--bottom")?,
        (None, None) => BottomSpec::free(n),
    };
    if spec.n() != n {
        bail!("--bottom lists {} heights, expected {n}", spec.n());
    }
    Ok(spec)
}

fn heights(hs: &[BottomHeight]) -> String {
    hs.iter().map(|h| if *h == BottomHeight::High { "n+1" } else { "n-1" }).collect::<Vec<_>>().join(",")
}

pub fn run(args: &EnumerateArgs, guard: Guard) -> Result<bool> {
    if args.n == 0 {
        bail!("n must be at least 1");
    }
    guard.check("n", args.n)?;
    let bottom = spec(args)?;
    let asms = map_halved_asms(args.n, &bottom, |a| {
        let stats = weight_stats(a);
        (a.matrix().rows().to_vec(), a.bottom_heights().unwrap_or_default(), stats)
    });
    let entries: Vec<Entry> = asms
        .into_iter()
        .enumerate()
        .map(|(index, (rows, bottom, stats))| Entry {
            index,
            rows,
            bottom,
            minus_weight: stats.minus_weight().to_string(),
            parity_weight: stats.parity_weight().to_string(),
            stats,
        })
        .collect();
    match args.format {
        Format::Json => {
            let spec_text = bottom
                .constraints()
                .iter()
                .map(|c| match c {
                    hasm_core::asm::BottomConstraint::Free => "*".to_string(),
                    hasm_core::asm::BottomConstraint::Fixed(h) => heights(&[*h]),
                })
                .collect::<Vec<_>>()
                .join(",");
            let listing = Listing { n: args.n, bottom: spec_text, count: entries.len(), asms: entries };
            println!("{}", serde_json::to_string_pretty(&listing)?);
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(std::io::stdout().lock());
            for e in &entries {
                w.serialize(CsvRow {
                    index: e.index,
                    rows: serde_json::to_string(&e.rows)?,
                    bottom: heights(&e.bottom),
                    n_minus: e.stats.n_minus,
                    n_minus_even: e.stats.n_minus_even,
                    n_minus_odd: e.stats.n_minus_odd,
                    n_plus_even: e.stats.n_plus_even,
                    n_plus_odd: e.stats.n_plus_odd,
                    minus_weight: &e.minus_weight,
                    parity_weight: &e.parity_weight,
                })?;
            }
            w.flush()?;
        }
        Format::Text => {
            for e in &entries {
                println!("#{} c=[{}] 2^N-={} parity={}", e.index, heights(&e.bottom), e.minus_weight, e.parity_weight);
                for r in &e.rows {
                    let cells: Vec<String> = r.iter().map(|v| format!("{v:>2}")).collect();
                    println!("  {}", cells.join(" "));
                }
            }
            println!("{} matrices", entries.len());
        }
    }
    Ok(true)
}
