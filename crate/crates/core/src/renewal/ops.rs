//! Matching-sum-preserving local rewrites other than urban renewal.
//! Every rewrite reports its factor under `M(input) = factor * M(output)`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exact::{format_rational, pow, rat, Rational};
use crate::graph::{Point, WeightedGraph};
use crate::matchings::{matching_sum, matching_sum_auto, visit_matchings, Engine, ORACLE_LIMIT};

/// Outer vertices created by tripling and the leaves added with dents.
pub const AUX: &str = "aux";
pub const DENT: &str = "dent";

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn unit(self) -> (i64, i64) {
        match self {
            Axis::Horizontal => (1, 0),
            Axis::Vertical => (0, 1),
        }
    }
}

/// Neighbors of `v` strictly to the left (horizontal) or strictly below
/// (vertical).
pub fn geometric_side(g: &WeightedGraph, v: Point, axis: Axis) -> BTreeSet<Point> {
    g.neighbors(v)
        .filter(|q| match axis {
            Axis::Horizontal => q.x < v.x,
            Axis::Vertical => q.y < v.y,
        })
        .collect()
}

/// Replaces `v` by the path `v1 - v - v3` with `v1 = v - unit`,
/// `v3 = v + unit`. Edges to `side_a` move to `v1`, the rest to `v3`.
pub fn split_vertex_three(g: &WeightedGraph, v: Point, axis: Axis, side_a: &BTreeSet<Point>) -> Result<WeightedGraph> {
    if !g.has_vertex(v) {
        return Err(Error::MissingVertex(v));
    }
    let nb: BTreeSet<Point> = g.neighbors(v).collect();
    if let Some(bad) = side_a.difference(&nb).next() {
        return Err(Error::Precondition(format!("{bad} is not a neighbor of {v}")));
    }
    let (dx, dy) = axis.unit();
    let (v1, v3) = (v.offset(-dx, -dy), v.offset(dx, dy));
    let mut h = g.clone();
    let edges: Vec<(Point, crate::graph::Edge)> = nb.iter().map(|&q| (q, g.edge(v, q).unwrap().clone())).collect();
    for &(q, _) in &edges {
        h.remove_edge(v, q);
    }
    for p in [v1, v3] {
        h.add_vertex(p)?;
        h.tag_vertex(p, AUX)?;
    }
    for (q, e) in edges {
        let end = if side_a.contains(&q) { v1 } else { v3 };
        h.add_edge(end, q, e.weight)?;
        for t in &e.tags {
            h.tag_edge(end, q, t)?;
        }
    }
    h.add_edge(v1, v, Rational::one())?;
    h.add_edge(v, v3, Rational::one())?;
    Ok(h)
}

/// Multiplies every edge at `v` by `lambda`; the factor is `1/lambda`.
pub fn gauge_scale_vertex(g: &WeightedGraph, v: Point, lambda: &Rational) -> Result<(WeightedGraph, Rational)> {
    if *lambda <= Rational::zero() {
        return Err(Error::Precondition(format!("gauge factor {} must be positive", format_rational(lambda))));
    }
    if !g.has_vertex(v) {
        return Err(Error::MissingVertex(v));
    }
    let mut h = g.clone();
    for q in g.neighbors(v) {
        h.set_weight(v, q, g.weight(v, q).unwrap() * lambda)?;
    }
    Ok((h, lambda.recip()))
}

#[derive(Clone, Debug)]
pub struct Stripped {
    pub graph: WeightedGraph,
    /// Product of the removed edge weights, or 0 if stripping isolated a
    /// vertex.
    pub factor: Rational,
    pub removed: Vec<(Point, Point)>,
    pub isolated: Option<Point>,
}

/// Removes degree-1 vertices together with their neighbors until none is
/// left.
pub fn strip_forced_edges(g: &WeightedGraph) -> Stripped {
    let mut h = g.clone();
    let mut factor = Rational::one();
    let mut removed = Vec::new();
    loop {
        let isolated = h.vertices().find(|&p| h.degree(p) == 0);
        if let Some(p) = isolated {
            return Stripped { graph: h, factor: Rational::zero(), removed, isolated: Some(p) };
        }
        let Some(leaf) = h.vertices().find(|&p| h.degree(p) == 1) else {
            return Stripped { graph: h, factor, removed, isolated: None };
        };
        let other = h.neighbors(leaf).next().unwrap();
        factor *= h.weight(leaf, other).unwrap();
        h.remove_vertex(leaf);
        h.remove_vertex(other);
        removed.push((leaf, other));
    }
}

/// A new vertex joined by weight-1 edges to existing `neighbors`, with an
/// optional fresh leaf `pendant`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DentFill {
    pub vertex: Point,
    pub neighbors: Vec<Point>,
    pub pendant: Option<Point>,
}

/// Adds the fills and checks that `M` did not move.
pub fn fill_dents(g: &WeightedGraph, fills: &[DentFill]) -> Result<WeightedGraph> {
    let mut h = g.clone();
    for f in fills {
        h.add_vertex(f.vertex)?;
        h.tag_vertex(f.vertex, DENT)?;
        for &q in &f.neighbors {
            if !g.has_vertex(q) {
                return Err(Error::MissingVertex(q));
            }
            h.add_edge(f.vertex, q, Rational::one())?;
        }
        if let Some(p) = f.pendant {
            h.add_vertex(p)?;
            h.tag_vertex(p, AUX)?;
            h.add_edge(f.vertex, p, Rational::one())?;
        }
    }
    let (before, after) = (matching_sum_auto(g)?, matching_sum_auto(&h)?);
    if before != after {
        return Err(Error::Precondition(format!(
            "dent filling changes M from {} to {}",
            format_rational(&before),
            format_rational(&after)
        )));
    }
    Ok(h)
}

fn in_class(w: &Rational, class: &[Rational]) -> bool {
    class.contains(w)
}

/// Whether every perfect matching uses exactly `count` edges with weight in
/// `class`. Exhaustive up to the oracle limit. Above it, compares
/// `M` with the class scaled by 2 and by 1/2: since all weights are
/// positive, `P(2) = 2^c P(1)` and `P(1/2) = 2^-c P(1)` together force
/// every term to have degree `c`.
pub fn class_count_is_uniform(g: &WeightedGraph, class: &[Rational], count: usize) -> Result<bool> {
    if g.vertex_count() <= ORACLE_LIMIT {
        let mut ok = true;
        visit_matchings(g, |m| {
            let k = m.edges().iter().filter(|&&(u, v)| in_class(g.weight(u, v).unwrap(), class)).count();
            ok &= k == count;
        });
        return Ok(ok);
    }
    let scaled = |t: Rational| g.map_weights(|_, _, w| if in_class(w, class) { w * &t } else { w.clone() });
    let base = matching_sum(g, Engine::Pfaffian)?;
    let up = matching_sum(&scaled(rat(2, 1))?, Engine::Pfaffian)?;
    let down = matching_sum(&scaled(rat(1, 2))?, Engine::Pfaffian)?;
    let c = count as u32;
    Ok(up == &base * pow(&rat(2, 1), c) && down == &base * pow(&rat(1, 2), c))
}

/// Divides every edge whose weight lies in `class` by `lambda`. Every
/// perfect matching must use exactly `count` such edges; the factor is
/// `lambda^count`.
pub fn scale_edge_class(
    g: &WeightedGraph,
    class: &[Rational],
    lambda: &Rational,
    count: usize,
) -> Result<(WeightedGraph, Rational)> {
    if *lambda <= Rational::zero() {
        return Err(Error::Precondition("class scale must be positive".into()));
    }
    if !class_count_is_uniform(g, class, count)? {
        let names: Vec<String> = class.iter().map(format_rational).collect();
        return Err(Error::Precondition(format!(
            "not every perfect matching uses exactly {count} edges of weight {{{}}}",
            names.join(", ")
        )));
    }
    let h = g.map_weights(|_, _, w| if in_class(w, class) { w / lambda } else { w.clone() })?;
    Ok((h, pow(lambda, count as u32)))
}
