use anyhow::{bail, Result};
use clap::{Args, ValueEnum};
use hasm_core::asm::{map_full_asms, parity_weighted_sum, minus_weighted_sum, weight_stats, BottomHeight, BottomSpec};
use hasm_core::builders::*;
use hasm_core::exact::{format_rational, rat, rat_int};
use hasm_core::formulas::*;
use hasm_core::{Rational, WeightedGraph};
use serde::Serialize;

use crate::graphs::sums;
use crate::{EngineArg, Format, Guard};

/// Graphs above this size skip the brute-force route.
pub const BRUTE_MAX_VERTICES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Identity {
    /// Minus-weighted halved ASMs against the teeth region.
    #[value(name = "1")]
    #[serde(rename = "1")]
    One,
    /// Parity-weighted halved ASMs against G_n and the fortresses.
    #[value(name = "2")]
    #[serde(rename = "2")]
    Two,
    /// Parity-weighted sums with the bottom row pinned.
    #[value(name = "3")]
    #[serde(rename = "3")]
    Three,
    /// Aztec rectangles with kept bottom vertices; n ranges over m.
    #[serde(rename = "lemma")]
    Lemma,
    /// Full ASM 2-enumerations.
    #[serde(rename = "remarks")]
    Remarks,
    /// M(G_n) and its ratio to M(G_{n-1}).
    #[serde(rename = "recursion")]
    Recursion,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    theorem: Identity,
    /// Range `a..b` (inclusive) or a single value.
    #[arg(long, default_value = "1..4")]
    n: String,
    #[arg(long, value_enum, default_value_t = EngineArg::Both)]
    engine: EngineArg,
    /// Largest rectangle width for `lemma`.
    #[arg(long, default_value_t = 4)]
    k: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Serialize)]
struct Value {
    route: String,
    value: String,
}

#[derive(Serialize)]
struct Check {
    n: usize,
    label: String,
    values: Vec<Value>,
    ok: bool,
}

#[derive(Serialize)]
struct Report {
    theorem: Identity,
    checks: Vec<Check>,
    ok: bool,
}

fn parse_range(s: &str) -> Result<(usize, usize)> {
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=')),
        None => (s.trim(), s.trim()),
    };
    let (a, b): (usize, usize) = (a.parse()?, b.parse()?);
    if a == 0 || a > b {
        bail!("bad range {s:?}: need 1 <= a <= b");
    }
    Ok((a, b))
}

struct Checker {
    engine: EngineArg,
    checks: Vec<Check>,
}

impl Checker {
    fn push(&mut self, n: usize, label: impl Into<String>, values: Vec<(String, Rational)>) {
        let ok = values.windows(2).all(|w| w[0].1 == w[1].1);
        let values = values.into_iter().map(|(route, v)| Value { route, value: format_rational(&v) }).collect();
        self.checks.push(Check { n, label: label.into(), values, ok });
    }

    /// Engine for graphs of up to `vertices` vertices.
    fn pick(&self, name: &str, vertices: usize) -> Result<EngineArg> {
        Ok(match self.engine {
            EngineArg::Both if vertices > BRUTE_MAX_VERTICES => EngineArg::Pfaffian,
            EngineArg::Brute if vertices > BRUTE_MAX_VERTICES => {
                bail!("{name} has {vertices} vertices, too many for brute force")
            }
            e => e,
        })
    }

    /// Matching sums of `g` by the selected engines, each multiplied by `scale`.
    fn matchings(&self, name: &str, g: &WeightedGraph, scale: &Rational) -> Result<Vec<(String, Rational)>> {
        self.matchings_total(name, std::slice::from_ref(g), scale)
    }

    fn matchings_total(&self, name: &str, graphs: &[WeightedGraph], scale: &Rational) -> Result<Vec<(String, Rational)>> {
        let most = graphs.iter().map(WeightedGraph::vertex_count).max().unwrap_or(0);
        let engine = self.pick(name, most)?;
        let mut total: Vec<(String, Rational)> = Vec::new();
        for g in graphs {
            let part = sums(g, engine)?;
            if total.is_empty() {
                total = part.into_iter().map(|(e, v)| (format!("{name}-{e}"), v)).collect();
            } else {
                for (t, p) in total.iter_mut().zip(part) {
                    t.1 += p.1;
                }
            }
        }
        Ok(total.into_iter().map(|(r, v)| (r, v * scale)).collect())
    }
}

pub fn run(args: &VerifyArgs, guard: Guard) -> Result<bool> {
    let (lo, hi) = parse_range(&args.n)?;
    guard.check("n", hi)?;
    let mut c = Checker { engine: args.engine, checks: Vec::new() };
    for n in lo..=hi {
        match args.theorem {
            Identity::One => {
                let mut vals = vec![("asm-sum".to_string(), rat_int(minus_weighted_sum(n, &BottomSpec::free(n))))];
                vals.extend(c.matchings("teeth", &build_teeth_region(n), &rat(1, 1))?);
                vals.push(("closed".into(), rat_int(theorem1_value(n))));
                c.push(n, "minus-weighted", vals);
            }
            Identity::Two => {
                let mut vals = vec![("asm-sum".to_string(), rat_int(parity_weighted_sum(n, &BottomSpec::free(n))))];
                vals.extend(c.matchings("gn-scaled", &build_gn(n), &rat_int(theorem1_value(n)))?);
                let fortresses: Vec<WeightedGraph> = BottomSpec::free(n)
                    .expand()
                    .iter()
                    .map(|cs| build_fortress(n, &BottomSpec::exact(cs)))
                    .collect::<hasm_core::Result<_>>()?;
                vals.extend(c.matchings_total("fortress", &fortresses, &rat(1, 1))?);
                vals.push(("closed".into(), rat_int(theorem2_value(n))));
                c.push(n, "parity-weighted", vals);
            }
            Identity::Three => {
                for (label, h, p) in [("c=n+1", BottomHeight::High, Pinned::High), ("c=n-1", BottomHeight::Low, Pinned::Low)] {
                    let vals = vec![
                        ("asm-sum".to_string(), rat_int(parity_weighted_sum(n, &BottomSpec::all(n, h)))),
                        ("closed".to_string(), rat_int(theorem3_value(n, p))),
                    ];
                    c.push(n, label, vals);
                }
            }
            Identity::Lemma => {
                for k in n..=args.k.max(n) {
                    for xs in KeptPositions::all(n, k) {
                        let g = build_aztec_rectangle_kept_bottom(n, k, &xs)?;
                        let mut vals = c.matchings("rect", &g, &rat(1, 1))?;
                        vals.push(("formula".into(), rat_int(aztec_rect_count(n, &xs)?)));
                        c.push(n, format!("k={k} xs={:?}", xs.as_slice()), vals);
                    }
                }
            }
            Identity::Remarks => {
                let (full, fortress) = remark_values(n);
                let minus: Rational = map_full_asms(n, |a| rat_int(weight_stats(a).minus_weight())).into_iter().sum();
                c.push(n, format!("order {n} minus-weighted"), vec![("asm-sum".into(), minus), ("closed".into(), rat_int(full))]);
                let parity: Rational =
                    map_full_asms(2 * n, |a| rat_int(weight_stats(a).parity_weight())).into_iter().sum();
                c.push(
                    n,
                    format!("order {} parity-weighted", 2 * n),
                    vec![("asm-sum".into(), parity), ("closed".into(), rat_int(fortress))],
                );
            }
            Identity::Recursion => {
                let one = rat(1, 1);
                let mut vals = c.matchings("gn", &build_gn(n), &one)?;
                vals.push(("closed".into(), gn_value(n)));
                vals.push(("recursion".into(), gn_value_recursive(n)));
                c.push(n, "value", vals);
                if n >= 2 {
                    let cur = c.matchings("gn", &build_gn(n), &one)?;
                    let prev = c.matchings("gn", &build_gn(n - 1), &one)?;
                    let mut vals: Vec<(String, Rational)> =
                        cur.into_iter().zip(prev).map(|((r, a), (_, b))| (r.replace("gn", "ratio"), a / b)).collect();
                    vals.push(("closed".into(), gn_ratio(n)));
                    c.push(n, "ratio", vals);
                }
            }
        }
    }
    let ok = c.checks.iter().all(|k| k.ok);
    let report = Report { theorem: args.theorem, checks: c.checks, ok };
    match args.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Csv => bail!("verify prints text or json"),
        Format::Text => {
            for k in &report.checks {
                let vals: Vec<String> = k.values.iter().map(|v| format!("{}={}", v.route, v.value)).collect();
                println!("n={} {}: {} {}", k.n, k.label, vals.join(" "), if k.ok { "match" } else { "MISMATCH" });
            }
            let bad = report.checks.iter().filter(|k| !k.ok).count();
            if bad == 0 {
                println!("all {} checks hold", report.checks.len());
            } else {
                println!("{bad} of {} checks failed", report.checks.len());
            }
        }
    }
    Ok(ok)
}
