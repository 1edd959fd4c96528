//! The scripted reduction of `G_n` to the mirror image of `G_{n-1}`.
//!
//! Frames: the input is multiplied by 4 before each tripling so split
//! vertices (offset by 1) never collide. Stage one renews the squares of
//! `G_n`; stage two renews the squares between them, whose bottom corners
//! are the teeth and the filled dents.

use std::collections::{BTreeMap, BTreeSet};

use super::ops::{geometric_side, split_vertex_three, Axis, DentFill};
use super::trace::{ReductionTrace, Runner, StepOp};
use crate::builders::{bottom_peak, build_gn, mirror, square_corners};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};
use crate::graph::{pt, Point, WeightedGraph};

/// Diamond corners `[left, top, right, bottom]`.
pub type Square = [Point; 4];

fn center(s: &Square) -> Point {
    pt((s[0].x + s[2].x) / 2, (s[1].y + s[3].y) / 2)
}

pub struct Tripled {
    pub graph: WeightedGraph,
    pub splits: Vec<(Point, Axis)>,
    /// Corners of every target square after splitting, in input order.
    pub corners: Vec<Square>,
}

/// Splits every vertex whose degree is neither 1 nor 3. A corner of a
/// target square splits toward the square (left/right corners
/// horizontally, top/bottom vertically); other vertices split
/// horizontally. Edges to neighbors strictly left of (or below) the vertex
/// go to the first new vertex.
pub fn triple_vertices(g: &WeightedGraph, squares: &[Square]) -> Result<Tripled> {
    let mut axis: BTreeMap<Point, Axis> = BTreeMap::new();
    for s in squares {
        for (k, &p) in s.iter().enumerate() {
            if !g.has_vertex(p) {
                return Err(Error::MissingVertex(p));
            }
            let a = if k % 2 == 0 { Axis::Horizontal } else { Axis::Vertical };
            if axis.insert(p, a).is_some_and(|old| old != a) {
                return Err(Error::Precondition(format!("{p} is a side and a tip of target squares")));
            }
        }
    }
    let split: Vec<(Point, Axis)> = g
        .vertices()
        .filter(|&p| !matches!(g.degree(p), 1 | 3))
        .map(|p| (p, axis.get(&p).copied().unwrap_or(Axis::Horizontal)))
        .collect();
    let mut h = g.clone();
    for &(p, a) in &split {
        let side = geometric_side(&h, p, a);
        h = split_vertex_three(&h, p, a, &side)?;
    }
    let was_split: BTreeSet<Point> = split.iter().map(|&(p, _)| p).collect();
    let corners = squares
        .iter()
        .map(|s| {
            let mut c = *s;
            if was_split.contains(&s[0]) {
                c[0] = s[0].offset(1, 0);
            }
            if was_split.contains(&s[1]) {
                c[1] = s[1].offset(0, -1);
            }
            if was_split.contains(&s[2]) {
                c[2] = s[2].offset(-1, 0);
            }
            if was_split.contains(&s[3]) {
                c[3] = s[3].offset(0, 1);
            }
            c
        })
        .collect();
    Ok(Tripled { graph: h, splits: split, corners })
}

fn scaled(p: Point, k: i64) -> Point {
    pt(k * p.x, k * p.y)
}

/// Squares of `G_n` in the frame scaled by `k`.
pub fn gn_squares(n: usize, k: i64) -> Vec<Square> {
    let mut out = Vec::new();
    for r in 1..=n as i64 {
        for c in 1..=2 * n as i64 {
            let s = square_corners(r, c);
            out.push([s.left, s.top, s.right, s.bottom].map(|p| scaled(p, k)));
        }
    }
    out
}

/// Squares between those of `G_n`: centered at `(2j, -2r+1)` for
/// `r = 1..n`, `j = 1..2n-1`, in the frame scaled by `k`.
pub fn between_squares(n: usize, k: i64) -> Vec<Square> {
    let mut out = Vec::new();
    for r in 1..=n as i64 {
        for j in 1..2 * n as i64 {
            let (x, y) = (2 * j, -2 * r + 1);
            out.push([pt(x - 1, y), pt(x, y + 1), pt(x + 1, y), pt(x, y - 1)].map(|p| scaled(p, k)));
        }
    }
    out
}

/// Dent `i` sits under the gap between teeth `i` and `i+1`.
pub fn dent_point(n: usize, i: usize) -> Point {
    pt(4 * i as i64, -2 * n as i64)
}

/// The bottom peak whose edges are halved alongside dent `i`: the
/// upper-left neighbor for odd `n`, the upper-right one for even `n`.
pub fn gauge_partner(n: usize, i: usize) -> Point {
    bottom_peak(n, if n % 2 == 1 { 2 * i } else { 2 * i + 1 })
}

/// `3 * 5^(n-1) / 2^(2n-1)`.
pub fn expected_factor(n: usize) -> Rational {
    assert!(n >= 2);
    let num = crate::exact::ipow(5, n as u32 - 1) * 3;
    Rational::new(num, crate::exact::ipow(2, 2 * n as u32 - 1))
}

#[derive(Clone, Debug)]
pub struct ReduceOptions {
    /// Check `M(before) = factor * M(after)` after every step.
    pub verify_steps: bool,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        Self { verify_steps: true }
    }
}

pub struct Reduction {
    pub trace: ReductionTrace,
    pub final_graph: WeightedGraph,
}

pub fn reduce_gn_once(n: usize) -> Result<Reduction> {
    reduce_gn_once_with(n, &ReduceOptions::default())
}

fn renew_all(run: &mut Runner, squares: Vec<Square>) -> Result<()> {
    let mut order: Vec<(Point, usize)> = squares.iter().enumerate().map(|(i, s)| (center(s), i)).collect();
    order.sort();
    let tripled = triple_vertices(&run.graph, &squares)?;
    run.push(StepOp::Triple { squares })?;
    for (_, i) in order {
        run.push(StepOp::Renew { corners: tripled.corners[i] })?;
    }
    Ok(())
}

pub fn reduce_gn_once_with(n: usize, opts: &ReduceOptions) -> Result<Reduction> {
    if n < 2 {
        return Err(Error::Precondition(format!("reduction needs n >= 2, got {n}")));
    }
    let mut run = Runner::new(build_gn(n), opts.verify_steps)?;

    run.push(StepOp::Rescale { k: 4 })?;
    renew_all(&mut run, gn_squares(n, 4))?;
    run.push(StepOp::Strip)?;
    let fills = (1..n)
        .map(|i| {
            let d = scaled(dent_point(n, i), 4);
            DentFill {
                vertex: d,
                neighbors: vec![scaled(bottom_peak(n, 2 * i), 4), scaled(bottom_peak(n, 2 * i + 1), 4)],
                pendant: Some(d.offset(0, -1)),
            }
        })
        .collect();
    run.push(StepOp::FillDents { fills })?;

    run.push(StepOp::Rescale { k: 4 })?;
    renew_all(&mut run, between_squares(n, 16))?;
    for i in 1..n {
        run.push(StepOp::Gauge { vertex: scaled(dent_point(n, i), 16), lambda: rat(2, 1) })?;
        run.push(StepOp::Gauge { vertex: scaled(gauge_partner(n, i), 16), lambda: rat(1, 2) })?;
    }
    run.push(StepOp::Strip)?;
    run.push(StepOp::ScaleClass { weights: vec![rat(1, 3), rat(2, 3)], lambda: rat(2, 3), count: 2 * n - 2 })?;
    run.push(StepOp::ScaleClass {
        weights: vec![rat(2, 5), rat(4, 5)],
        lambda: rat(4, 5),
        count: 2 * (n - 1) * (n - 1),
    })?;

    let target = mirror(&build_gn(n - 1));
    if !run.graph.coordinate_isomorphic(&target) {
        return Err(Error::StepFailed {
            index: run.steps.len(),
            op: "final".into(),
            reason: "end graph is not the mirrored smaller graph".into(),
        });
    }
    let trace = ReductionTrace { n, steps: run.steps, cumulative: run.cumulative, final_isomorphic: true };
    Ok(Reduction { trace, final_graph: run.graph })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::pow;
    use crate::renewal::find_renewal_sites;

    fn stage_factor(trace: &ReductionTrace, from: usize, to: usize) -> Rational {
        trace.steps[from..to].iter().map(|s| s.factor.clone()).product()
    }

    #[test]
    fn reduces_two_and_three() {
        for (n, f) in [(2, rat(15, 8)), (3, rat(75, 32))] {
            let r = reduce_gn_once(n).unwrap();
            assert_eq!(r.trace.cumulative, f);
            assert_eq!(expected_factor(n), f);
            assert!(r.final_graph.coordinate_isomorphic(&mirror(&build_gn(n - 1))));
        }
    }

    #[test]
    fn stage_factors() {
        let n = 3;
        let r = reduce_gn_once_with(n, &ReduceOptions { verify_steps: false }).unwrap();
        let steps = &r.trace.steps;
        let triples: Vec<usize> = (0..steps.len()).filter(|&i| steps[i].op.name() == "triple").collect();
        let strips: Vec<usize> = (0..steps.len()).filter(|&i| steps[i].op.name() == "strip").collect();
        assert_eq!(stage_factor(&r.trace, triples[0], strips[0]), rat(1, 1));
        let k = ((n - 1) * (2 * n - 1)) as u32;
        let second = pow(&rat(5, 4), k) * pow(&rat(3, 2), 2 * n as u32 - 1);
        let gauges = steps.iter().position(|s| s.op.name() == "gauge").unwrap();
        assert_eq!(stage_factor(&r.trace, triples[1], gauges), second);
        assert_eq!(stage_factor(&r.trace, gauges, strips[1] + 1), rat(1, 1));
    }

    #[test]
    fn tripled_gn_renews_every_square() {
        for n in 1..=3 {
            let g = build_gn(n).scale(4);
            let t = triple_vertices(&g, &gn_squares(n, 4)).unwrap();
            let sites = find_renewal_sites(&t.graph);
            assert_eq!(sites.len(), 2 * n * n);
            let mut found: Vec<Vec<Point>> = sites.iter().map(|s| sorted(&s.corners)).collect();
            let mut want: Vec<Vec<Point>> = t.corners.iter().map(sorted).collect();
            found.sort();
            want.sort();
            assert_eq!(found, want);
        }
    }

    fn sorted(s: &[Point; 4]) -> Vec<Point> {
        let mut v = s.to_vec();
        v.sort();
        v
    }

    #[test]
    fn small_n_is_refused() {
        assert!(reduce_gn_once(1).is_err());
    }

    #[test]
    fn gauge_partner_alternates() {
        assert_eq!(gauge_partner(3, 1), bottom_peak(3, 2));
        assert_eq!(gauge_partner(2, 1), bottom_peak(2, 3));
    }
}
