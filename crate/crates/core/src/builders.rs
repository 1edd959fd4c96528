//! Canonical constructions of every graph family used by the verifiers.
//!
//! Square `(r, c)` of an Aztec rectangle is the diamond on
//! `L = (2c-2, -2r+2)`, `T = (2c-1, -2r+3)`, `R = (2c, -2r+2)`,
//! `B = (2c-1, -2r+1)`.

use serde::{Deserialize, Serialize};

use crate::asm::{BottomConstraint, BottomHeight, BottomSpec};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};
use crate::graph::{pt, Point, WeightedGraph};

pub const TOOTH: &str = "tooth";
pub const PENDING: &str = "pending";
pub const BOTTOM_EVEN: &str = "bottom-even";

/// Strictly increasing bottom positions `1 <= x_1 < ... < x_m <= k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct KeptPositions(Vec<usize>);

impl KeptPositions {
    pub fn new(xs: Vec<usize>, k: usize) -> Result<Self> {
        if xs.iter().any(|&x| x == 0 || x > k) {
            return Err(Error::InvalidGraph(format!("kept positions {xs:?} outside 1..={k}")));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidGraph(format!("kept positions {xs:?} not strictly increasing")));
        }
        Ok(Self(xs))
    }

    pub fn odd(n: usize) -> Self {
        Self((1..=n).map(|i| 2 * i - 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every size-`m` subset of `1..=k`, lexicographically.
    pub fn all(m: usize, k: usize) -> Vec<Self> {
        fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<KeptPositions>) {
            if left == 0 {
                out.push(KeptPositions(cur.clone()));
                return;
            }
            for x in start..=k {
                cur.push(x);
                rec(x + 1, k, left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(1, k, m, &mut Vec::new(), &mut out);
        out
    }
}

pub struct SquareCorners {
    pub left: Point,
    pub top: Point,
    pub right: Point,
    pub bottom: Point,
}

pub fn square_corners(r: i64, c: i64) -> SquareCorners {
    SquareCorners {
        left: pt(2 * c - 2, -2 * r + 2),
        top: pt(2 * c - 1, -2 * r + 3),
        right: pt(2 * c, -2 * r + 2),
        bottom: pt(2 * c - 1, -2 * r + 1),
    }
}

/// Bottom peak of column `p` in an `m`-row rectangle.
pub fn bottom_peak(m: usize, p: usize) -> Point {
    pt(2 * p as i64 - 1, -2 * m as i64 + 1)
}

fn rectangle_with(m: usize, k: usize, weight: impl Fn(usize, usize) -> Rational) -> WeightedGraph {
    assert!(m >= 1 && k >= 1, "rectangle needs at least one square");
    let mut g = WeightedGraph::new();
    for r in 1..=m {
        for c in 1..=k {
            let s = square_corners(r as i64, c as i64);
            let w = weight(r, c);
            for (u, v) in [(s.left, s.top), (s.top, s.right), (s.right, s.bottom), (s.bottom, s.left)] {
                g.connect(u, v, w.clone()).expect("squares share no edges");
            }
        }
    }
    g
}

pub fn build_aztec_rectangle(m: usize, k: usize) -> WeightedGraph {
    rectangle_with(m, k, |_, _| rat(1, 1))
}

/// Deletes every bottom peak except the kept positions. `|xs| != m` is
/// refused since the vertex classes would be unbalanced.
pub fn build_aztec_rectangle_kept_bottom(m: usize, k: usize, xs: &KeptPositions) -> Result<WeightedGraph> {
    if xs.len() != m {
        return Err(Error::InvalidGraph(format!(
            "{} kept positions for {m} rows: unmatchable",
            xs.len()
        )));
    }
    if xs.as_slice().iter().any(|&x| x > k) {
        return Err(Error::InvalidGraph(format!("kept positions exceed width {k}")));
    }
    let mut g = build_aztec_rectangle(m, k);
    for p in 1..=k {
        if !xs.as_slice().contains(&p) {
            g.remove_vertex(bottom_peak(m, p));
        }
    }
    Ok(g)
}

pub fn build_teeth_region(n: usize) -> WeightedGraph {
    build_aztec_rectangle_kept_bottom(n, 2 * n - 1, &KeptPositions::odd(n)).expect("odd positions are valid")
}

pub fn tooth_point(n: usize, i: usize) -> Point {
    pt(4 * i as i64 - 2, -2 * n as i64)
}

/// `n x 2n` rectangle, square `(r, c)` weighted 1/2 when `r + c` is even,
/// with tooth `i` hanging below bottom peaks `2i-1` and `2i`.
pub fn build_gn(n: usize) -> WeightedGraph {
    let mut g = rectangle_with(n, 2 * n, |r, c| if (r + c) % 2 == 0 { rat(1, 2) } else { rat(1, 1) });
    for i in 1..=n {
        let z = tooth_point(n, i);
        g.add_vertex(z).unwrap();
        g.tag_vertex(z, TOOTH).unwrap();
        g.add_edge(z, bottom_peak(n, 2 * i - 1), rat(1, 1)).unwrap();
        g.add_edge(z, bottom_peak(n, 2 * i), rat(1, 1)).unwrap();
    }
    g
}

/// Center of fortress cell `(i, j)`.
pub fn cell_center(i: usize, j: usize) -> Point {
    pt(3 * j as i64 - 1, -3 * i as i64 + 3)
}

pub fn cell_is_even(i: usize, j: usize) -> bool {
    (i + j) % 2 == 0
}

/// Whether bottom pair `i` (cells `2i-1`, `2i`) carries pending edges.
pub fn pair_present(n: usize, c: BottomHeight) -> bool {
    (c == BottomHeight::Low) == (n % 2 == 1)
}

fn fixed_bottoms(n: usize, spec: &BottomSpec) -> Result<Vec<BottomHeight>> {
    if spec.n() != n {
        return Err(Error::InvalidGraph(format!("bottom spec has {} entries, expected {n}", spec.n())));
    }
    spec.constraints()
        .iter()
        .map(|c| match c {
            BottomConstraint::Fixed(h) => Ok(*h),
            BottomConstraint::Free => Err(Error::InvalidGraph("fortress needs every c_i fixed".into())),
        })
        .collect()
}

/// `n x 2n` fortress. Even cells are diamonds with four unit connectors;
/// odd cells are bare diamonds on the connector endpoints. Boundary
/// connectors on the left, top and right end in leaves; bottom pending
/// edges follow `pending`.
pub fn build_fortress(n: usize, pending: &BottomSpec) -> Result<WeightedGraph> {
    assert!(n >= 1, "fortress needs n >= 1");
    let cs = fixed_bottoms(n, pending)?;
    let one = || rat(1, 1);
    let mut g = WeightedGraph::new();
    for i in 1..=n {
        for j in 1..=2 * n {
            let c = cell_center(i, j);
            let corners = [c.offset(-1, 0), c.offset(0, 1), c.offset(1, 0), c.offset(0, -1)];
            for k in 0..4 {
                g.connect(corners[k], corners[(k + 1) % 4], one())?;
            }
        }
    }
    for i in 1..=n {
        for j in 1..=2 * n {
            let c = cell_center(i, j);
            let present = pair_present(n, cs[(j - 1) / 2]);
            if !cell_is_even(i, j) {
                if i == n && present {
                    g.connect(c.offset(0, -1), c.offset(0, -2), one())?;
                    g.tag_edge(c.offset(0, -1), c.offset(0, -2), PENDING)?;
                }
                continue;
            }
            for (dx, dy) in [(-1, 0), (0, 1), (1, 0)] {
                g.connect(c.offset(dx, dy), c.offset(2 * dx, 2 * dy), one())?;
            }
            if i == n {
                g.tag_vertex(c.offset(0, -1), BOTTOM_EVEN)?;
                if present {
                    g.connect(c.offset(0, -1), c.offset(0, -2), one())?;
                    g.tag_edge(c.offset(0, -1), c.offset(0, -2), PENDING)?;
                }
            } else {
                g.connect(c.offset(0, -1), c.offset(0, -2), one())?;
            }
        }
    }
    Ok(g)
}

/// Gives every bottom even cell without a downward connector a two-edge
/// pendant path. The two new vertices pair with each other in every
/// perfect matching, so the matching sum is unchanged.
pub fn normalize_fortress_bottom(g: &WeightedGraph) -> WeightedGraph {
    let mut out = g.clone();
    let bottoms: Vec<Point> = g.vertices().filter(|&p| g.has_tag(p, BOTTOM_EVEN)).collect();
    for s in bottoms {
        let below = s.offset(0, -1);
        if g.has_edge(s, below) {
            continue;
        }
        out.connect(s, below, rat(1, 1)).expect("fresh pendant vertex");
        out.connect(below, below.offset(0, -1), rat(1, 1)).expect("fresh pendant vertex");
    }
    out
}

pub fn mirror(g: &WeightedGraph) -> WeightedGraph {
    g.mirror()
}

/// Closed-form vertex counts used as construction checks.
pub mod counts {
    pub fn aztec_rectangle_vertices(m: usize, k: usize) -> usize {
        m * (k + 1) + (m + 1) * k
    }

    pub fn aztec_rectangle_edges(m: usize, k: usize) -> usize {
        4 * m * k
    }

    pub fn gn_vertices(n: usize) -> usize {
        4 * n * n + 4 * n
    }

    pub fn gn_edges(n: usize) -> usize {
        8 * n * n + 2 * n
    }

    pub fn fortress_vertices(n: usize, present_pairs: usize) -> usize {
        8 * n * n + 2 * n + 2 * present_pairs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asm::BottomHeight::{High, Low};

    #[test]
    fn rectangle_counts() {
        let g = build_aztec_rectangle(2, 3);
        assert_eq!((g.vertex_count(), g.edge_count()), (17, 24));
        for m in 1..=4 {
            for k in 1..=5 {
                let g = build_aztec_rectangle(m, k);
                assert_eq!(g.vertex_count(), counts::aztec_rectangle_vertices(m, k));
                assert_eq!(g.edge_count(), counts::aztec_rectangle_edges(m, k));
                assert!(g.is_bipartite());
            }
        }
        let one = build_aztec_rectangle(1, 1);
        assert_eq!((one.vertex_count(), one.edge_count()), (4, 4));
    }

    #[test]
    fn kept_bottom_checks() {
        assert!(build_aztec_rectangle_kept_bottom(2, 3, &KeptPositions::new(vec![1], 3).unwrap()).is_err());
        assert!(KeptPositions::new(vec![2, 1], 3).is_err());
        assert!(KeptPositions::new(vec![0], 3).is_err());
        let g = build_aztec_rectangle_kept_bottom(1, 2, &KeptPositions::new(vec![1], 2).unwrap()).unwrap();
        assert_eq!(g.vertex_count(), 6);
        assert_eq!(KeptPositions::all(2, 4).len(), 6);
    }

    #[test]
    fn teeth_region_shape() {
        assert_eq!(build_teeth_region(1), build_aztec_rectangle(1, 1));
        let g = build_teeth_region(3);
        let bottom: Vec<i64> = g.vertices().filter(|p| p.y == -5).map(|p| p.x).collect();
        assert_eq!(bottom, vec![1, 5, 9]);
        assert_eq!(g.vertex_count(), 36);
    }

    #[test]
    fn gn_shape() {
        for n in 1..=4 {
            let g = build_gn(n);
            assert_eq!(g.vertex_count(), counts::gn_vertices(n));
            assert_eq!(g.edge_count(), counts::gn_edges(n));
            assert!(g.is_bipartite());
        }
        let g = build_gn(1);
        assert_eq!(g.weight(pt(0, 0), pt(1, 1)), Some(&rat(1, 2)));
        assert_eq!(g.weight(pt(2, 0), pt(3, 1)), Some(&rat(1, 1)));
        assert!(g.has_edge(pt(2, -2), pt(1, -1)) && g.has_edge(pt(2, -2), pt(3, -1)));
        assert!(g.has_tag(pt(2, -2), TOOTH));
    }

    #[test]
    fn fortress_shape() {
        let f = build_fortress(1, &BottomSpec::exact(&[Low])).unwrap();
        assert_eq!(f.vertex_count(), counts::fortress_vertices(1, 1));
        let f = build_fortress(1, &BottomSpec::exact(&[High])).unwrap();
        assert_eq!(f.vertex_count(), counts::fortress_vertices(1, 0));
        let f = build_fortress(3, &BottomSpec::exact(&[Low, Low, High])).unwrap();
        assert_eq!(f.vertex_count(), counts::fortress_vertices(3, 2));
        assert!(f.is_bipartite());
        assert!(build_fortress(2, &BottomSpec::free(2)).is_err());
        // odd cells of the bottom row carry the pending pendant of their pair
        let odd_bottom = cell_center(3, 2).offset(0, -1);
        assert_eq!(f.degree(odd_bottom), 3);
        let absent = cell_center(3, 6).offset(0, -1);
        assert_eq!(f.degree(absent), 2);
    }

    #[test]
    fn normalized_bottom() {
        let f = build_fortress(2, &BottomSpec::exact(&[Low, High])).unwrap();
        let g = normalize_fortress_bottom(&f);
        for j in 1..=4 {
            if cell_is_even(2, j) {
                assert_eq!(g.degree(cell_center(2, j).offset(0, -1)), 3);
            }
        }
        let full = build_fortress(2, &BottomSpec::exact(&[High, High])).unwrap();
        assert_eq!(normalize_fortress_bottom(&full), full);
    }
}
