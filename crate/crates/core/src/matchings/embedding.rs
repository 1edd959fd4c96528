//! Straight-line embedding checks and face traversal on integer coordinates.
//! All geometric predicates are exact integer arithmetic.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Point, WeightedGraph};

fn cross(o: Point, a: Point, b: Point) -> i128 {
    let (ax, ay) = ((a.x - o.x) as i128, (a.y - o.y) as i128);
    let (bx, by) = ((b.x - o.x) as i128, (b.y - o.y) as i128);
    ax * by - ay * bx
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    cross(a, b, p) == 0 && p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share a point.
fn segments_touch(a: Point, b: Point, c: Point, d: Point) -> bool {
    let (d1, d2) = (cross(a, b, c), cross(a, b, d));
    let (d3, d4) = (cross(c, d, a), cross(c, d, b));
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

/// Rejects crossing edges, edges through vertices and overlapping edges.
pub fn check_planar_embedding(g: &WeightedGraph) -> Result<()> {
    let edges: Vec<(Point, Point)> = g.edges().map(|(u, v, _)| (u, v)).collect();
    for (i, &(a, b)) in edges.iter().enumerate() {
        for p in g.vertices() {
            if p != a && p != b && on_segment(p, a, b) {
                return Err(Error::NonPlanar(format!("vertex {p} lies on edge {a}-{b}")));
            }
        }
        for &(c, d) in &edges[i + 1..] {
            let shared = [a, b].iter().filter(|p| **p == c || **p == d).count();
            match shared {
                0 if segments_touch(a, b, c, d) => {
                    return Err(Error::NonPlanar(format!("edges {a}-{b} and {c}-{d} cross")));
                }
                1 => {
                    // collinear and pointing the same way from the common end
                    let (o, p, q) = if a == c {
                        (a, b, d)
                    } else if a == d {
                        (a, b, c)
                    } else if b == c {
                        (b, a, d)
                    } else {
                        (b, a, c)
                    };
                    let same_dir = cross(o, p, q) == 0
                        && ((p.x - o.x) as i128 * (q.x - o.x) as i128 + (p.y - o.y) as i128 * (q.y - o.y) as i128) > 0;
                    if same_dir {
                        return Err(Error::NonPlanar(format!("edges {a}-{b} and {c}-{d} overlap")));
                    }
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Counterclockwise comparison of direction vectors, starting at angle 0.
fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> Ordering {
    let half = |(x, y): (i64, i64)| if y > 0 || (y == 0 && x > 0) { 0 } else { 1 };
    half(a).cmp(&half(b)).then_with(|| {
        let c = a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128;
        0.cmp(&c)
    })
}

/// Neighbors of every vertex in counterclockwise order.
pub fn rotation_system(g: &WeightedGraph) -> BTreeMap<Point, Vec<Point>> {
    g.vertices()
        .map(|v| {
            let mut nb: Vec<Point> = g.neighbors(v).collect();
            nb.sort_by(|a, b| angle_cmp((a.x - v.x, a.y - v.y), (b.x - v.x, b.y - v.y)));
            (v, nb)
        })
        .collect()
}

/// A face as its boundary walk of directed edges, face on the left.
#[derive(Clone, Debug)]
pub struct Face {
    pub walk: Vec<(Point, Point)>,
    /// Twice the signed area; positive for bounded faces.
    pub area2: i128,
}

/// Traces every face. Each directed edge lies on exactly one walk.
pub fn faces(g: &WeightedGraph) -> Vec<Face> {
    let rot = rotation_system(g);
    let mut used: BTreeMap<(Point, Point), bool> = BTreeMap::new();
    for (u, v, _) in g.edges() {
        used.insert((u, v), false);
        used.insert((v, u), false);
    }
    let keys: Vec<(Point, Point)> = used.keys().copied().collect();
    let mut out = Vec::new();
    for start in keys {
        if used[&start] {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = start;
        loop {
            used.insert(cur, true);
            walk.push(cur);
            let (u, v) = cur;
            let around = &rot[&v];
            let k = around.iter().position(|&w| w == u).unwrap();
            let w = around[(k + around.len() - 1) % around.len()];
            cur = (v, w);
            if cur == start {
                break;
            }
        }
        let area2 = walk
            .iter()
            .map(|(a, b)| a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128)
            .sum();
        out.push(Face { walk, area2 });
    }
    out
}
