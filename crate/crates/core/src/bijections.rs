//! Halved ASMs to sets of perfect matchings: `2^N-` matchings of the teeth
//! region and `2^(N-even + N+odd)` matchings of a fortress.

use serde::Serialize;
use std::collections::BTreeMap;

use crate::asm::{enumerate_halved_asms, weight_stats, AsmLike, BottomHeight, BottomSpec, HalvedAsm};
use crate::builders::{build_fortress, build_teeth_region, cell_center, cell_is_even};
use crate::error::{Error, Result};
use crate::graph::{pt, Point, WeightedGraph};
use crate::matchings::{enumerate_matchings, Matching};
use crate::par;

/// Region vertices around entry `(i, j)` of the teeth labeling, as
/// `[left, top, right, bottom]`. Entry `(i, j)` sits at `(2j-2, -2i+3)`.
pub fn teeth_face(i: usize, j: usize) -> [Point; 4] {
    let (x, y) = (2 * j as i64 - 2, -2 * i as i64 + 3);
    [pt(x - 1, y), pt(x, y + 1), pt(x + 1, y), pt(x, y - 1)]
}

fn row_prefix(a: &HalvedAsm, i: usize, j: usize) -> i32 {
    (1..j).map(|r| a.get(i, r) as i32).sum()
}

fn col_prefix(a: &HalvedAsm, i: usize, j: usize) -> i32 {
    (1..i).map(|l| a.get(l, j) as i32).sum()
}

fn bottoms(a: &HalvedAsm) -> Result<Vec<BottomHeight>> {
    a.bottom_heights()
        .ok_or_else(|| Error::Bijection("bottom row of the height matrix is not of the halved form".into()))
}

fn edge_in(g: &WeightedGraph, u: Point, v: Point) -> Result<(Point, Point)> {
    if g.has_edge(u, v) {
        Ok((u, v))
    } else {
        Err(Error::Bijection(format!("rule asks for missing edge {u}-{v}")))
    }
}

/// Expands a list of fixed edges and binary choices into all matchings,
/// choice bits read most significant first.
fn expand(g: &WeightedGraph, fixed: Vec<(Point, Point)>, choices: Vec<[[(Point, Point); 2]; 2]>) -> Result<Vec<Matching>> {
    let total = 1usize << choices.len();
    let mut out = Vec::with_capacity(total);
    for mask in 0..total {
        let mut edges = fixed.clone();
        for (k, pair) in choices.iter().enumerate() {
            let bit = (mask >> (choices.len() - 1 - k)) & 1;
            edges.extend_from_slice(&pair[bit]);
        }
        let m = Matching::new(edges);
        if !m.is_perfect_in(g) {
            return Err(Error::Bijection(format!("edge set {:?} is not a perfect matching", m.edges())));
        }
        out.push(m);
    }
    Ok(out)
}

/// The `2^N-` teeth-region matchings of `a`. A 1 leaves its face empty, a
/// 0 joins the face vertices toward the 1 of its row and toward the 1
/// above it in its column (the bottom vertex when there is none), and a
/// -1 takes NW+SE (choice 0) or NE+SW (choice 1). Tooth `i` is matched
/// northwest iff `c_i = n-1`.
pub fn aztec_matchings_of_asm(a: &HalvedAsm) -> Result<Vec<Matching>> {
    let n = a.n();
    let g = build_teeth_region(n);
    let mut fixed = Vec::new();
    let mut choices = Vec::new();
    for i in 1..=n {
        for j in 1..=2 * n {
            let [l, t, r, b] = teeth_face(i, j);
            match a.get(i, j) {
                1 => {}
                -1 => choices.push([[edge_in(&g, l, t)?, edge_in(&g, r, b)?], [edge_in(&g, t, r)?, edge_in(&g, b, l)?]]),
                _ => {
                    let h = if row_prefix(a, i, j) == 1 { l } else { r };
                    let v = if col_prefix(a, i, j) == 1 { t } else { b };
                    fixed.push(edge_in(&g, h, v)?);
                }
            }
        }
    }
    for (k, c) in bottoms(a)?.into_iter().enumerate() {
        let tooth = pt(4 * k as i64 + 1, -2 * n as i64 + 1);
        let up = match c {
            BottomHeight::Low => tooth.offset(-1, 1),
            BottomHeight::High => tooth.offset(1, 1),
        };
        fixed.push(edge_in(&g, tooth, up)?);
    }
    expand(&g, fixed, choices)
}

/// Reads an entry off each face: `1 - (matching edges inside the face)`.
pub fn asm_of_aztec_matching(n: usize, m: &Matching) -> Result<HalvedAsm> {
    let g = build_teeth_region(n);
    if !m.is_perfect_in(&g) {
        return Err(Error::Bijection("not a perfect matching of the teeth region".into()));
    }
    let mut rows = vec![vec![0i8; 2 * n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let [l, t, r, b] = teeth_face(i + 1, j + 1);
            let inside = [(l, t), (t, r), (r, b), (b, l)].iter().filter(|&&(u, v)| m.contains(u, v)).count();
            *e = 1 - inside as i8;
        }
    }
    HalvedAsm::from_rows(rows)
}

/// Fortress cell corners `[W, N, E, S]`.
fn cell_corners(i: usize, j: usize) -> [Point; 4] {
    let c = cell_center(i, j);
    [c.offset(-1, 0), c.offset(0, 1), c.offset(1, 0), c.offset(0, -1)]
}

/// The `2^(N-even + N+odd)` matchings of the fortress built for `a`'s
/// bottom row. The connector right of cell `(i, j)` is used iff the row
/// prefix sum through `j` plus `i + j` is odd, the one below iff the
/// column prefix sum through `i` plus `i + j` is odd. Corners left free
/// are matched inside their cell: uniquely for a 0, in two ways
/// (W-N + E-S as choice 0, N-E + W-S as choice 1) when all four are free.
pub fn fortress_matchings_of_asm(a: &HalvedAsm) -> Result<Vec<Matching>> {
    let n = a.n();
    let g = build_fortress(n, &BottomSpec::exact(&bottoms(a)?))?;
    let right_in = |i: usize, j: usize| (row_prefix(a, i, j + 1) + (i + j) as i32) % 2 == 1;
    let below_in = |i: usize, j: usize| (col_prefix(a, i + 1, j) + (i + j) as i32) % 2 == 1;
    let mut fixed = Vec::new();
    let mut choices = Vec::new();
    for i in 1..=n {
        for j in 1..=2 * n {
            let [w, nn, e, s] = cell_corners(i, j);
            let c = cell_center(i, j);
            let used = [right_in(i, j - 1), below_in(i - 1, j), right_in(i, j), below_in(i, j)];
            // leaves and pending edges belong to the cell they hang from
            if used[0] && j == 1 {
                fixed.push(edge_in(&g, w, c.offset(-2, 0))?);
            }
            if used[1] && i == 1 {
                fixed.push(edge_in(&g, nn, c.offset(0, 2))?);
            }
            if used[2] {
                let far = if j == 2 * n { c.offset(2, 0) } else { cell_corners(i, j + 1)[0] };
                fixed.push(edge_in(&g, e, far)?);
            }
            if used[3] {
                let far = if i == n { c.offset(0, -2) } else { cell_corners(i + 1, j)[1] };
                fixed.push(edge_in(&g, s, far)?);
            }
            let corners = [w, nn, e, s];
            let free: Vec<usize> = (0..4).filter(|&k| !used[k]).collect();
            match free.len() {
                0 => {}
                2 if (free[1] - free[0]) % 2 == 1 => fixed.push(edge_in(&g, corners[free[0]], corners[free[1]])?),
                4 => {
                    let entry = a.get(i, j);
                    if (entry == -1) != cell_is_even(i, j) {
                        return Err(Error::Bijection(format!("cell ({i},{j}) has four free corners for entry {entry}")));
                    }
                    choices.push([[(w, nn), (e, s)], [(nn, e), (w, s)]]);
                }
                _ => return Err(Error::Bijection(format!("cell ({i},{j}) has free corners {free:?}"))),
            }
        }
    }
    expand(&g, fixed, choices)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Teeth,
    Fortress,
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionReport {
    pub family: Family,
    pub n: usize,
    pub asms: usize,
    /// All perfect matchings of the region(s).
    pub region_matchings: usize,
    /// Sum of the per-ASM set sizes.
    pub image_size: usize,
    /// ASMs whose set size differs from their weight.
    pub cardinality_failures: Vec<String>,
    /// Matchings produced by more than one ASM, with the ASMs.
    pub overlaps: Vec<String>,
    /// Region matchings produced by no ASM.
    pub missing: usize,
}

impl PartitionReport {
    pub fn ok(&self) -> bool {
        self.cardinality_failures.is_empty()
            && self.overlaps.is_empty()
            && self.missing == 0
            && self.image_size == self.region_matchings
    }
}

fn check_region(
    region: &WeightedGraph,
    asms: &[HalvedAsm],
    sets: Vec<Vec<Matching>>,
    report: &mut PartitionReport,
) {
    let mut owner: BTreeMap<Matching, usize> = BTreeMap::new();
    for (k, set) in sets.into_iter().enumerate() {
        report.image_size += set.len();
        for m in set {
            if let Some(prev) = owner.insert(m, k) {
                report.overlaps.push(format!("{} and {}", asms[prev].matrix(), asms[k].matrix()));
            }
        }
    }
    let all = enumerate_matchings(region).matchings;
    report.region_matchings += all.len();
    report.missing += all.iter().filter(|m| !owner.contains_key(m)).count();
}

/// Checks that the per-ASM matching sets are disjoint, have the predicted
/// sizes, and cover every matching of the region (of every fortress, one
/// per bottom configuration, for the fortress family).
pub fn verify_partition(n: usize, family: Family) -> Result<PartitionReport> {
    let asms = enumerate_halved_asms(n, &BottomSpec::free(n));
    let mut report = PartitionReport {
        family,
        n,
        asms: asms.len(),
        region_matchings: 0,
        image_size: 0,
        cardinality_failures: Vec::new(),
        overlaps: Vec::new(),
        missing: 0,
    };
    let sets = par::map(asms.clone(), |a| match family {
        Family::Teeth => aztec_matchings_of_asm(&a),
        Family::Fortress => fortress_matchings_of_asm(&a),
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    for (a, set) in asms.iter().zip(&sets) {
        let st = weight_stats(a);
        let expected = match family {
            Family::Teeth => st.minus_weight(),
            Family::Fortress => st.parity_weight(),
        };
        if num_bigint::BigInt::from(set.len()) != expected {
            report.cardinality_failures.push(format!("{}: {} matchings, expected {expected}", a.matrix(), set.len()));
        }
    }
    match family {
        Family::Teeth => check_region(&build_teeth_region(n), &asms, sets, &mut report),
        Family::Fortress => {
            let mut groups: BTreeMap<Vec<BottomHeight>, (Vec<HalvedAsm>, Vec<Vec<Matching>>)> = BTreeMap::new();
            for (a, set) in asms.iter().zip(sets) {
                let entry = groups.entry(bottoms(a)?).or_default();
                entry.0.push(a.clone());
                entry.1.push(set);
            }
            for cs in BottomSpec::free(n).expand() {
                let region = build_fortress(n, &BottomSpec::exact(&cs))?;
                let (group, group_sets) = groups.remove(&cs).unwrap_or_default();
                check_region(&region, &group, group_sets, &mut report);
            }
        }
    }
    Ok(report)
}
