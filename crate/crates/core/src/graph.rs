//! Weighted planar graphs on integer lattice coordinates.
//!
//! Vertices are identified by their coordinates. Iteration order (and hence
//! every vertex id) is reading order: top row first, left to right.

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{serde_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

pub const fn pt(x: i64, y: i64) -> Point {
    Point { x, y }
}

impl Point {
    pub fn offset(self, dx: i64, dy: i64) -> Point {
        pt(self.x + dx, self.y + dy)
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> Ordering {
        other.y.cmp(&self.y).then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

pub type Tags = BTreeSet<String>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub weight: Rational,
    pub tags: Tags,
}

/// Unordered vertex pair stored with the smaller endpoint first.
pub fn edge_key(u: Point, v: Point) -> (Point, Point) {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedGraph {
    vertices: BTreeMap<Point, Tags>,
    edges: BTreeMap<(Point, Point), Edge>,
    adj: BTreeMap<Point, BTreeSet<Point>>,
}

impl WeightedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn has_vertex(&self, p: Point) -> bool {
        self.vertices.contains_key(&p)
    }

    pub fn has_edge(&self, u: Point, v: Point) -> bool {
        self.edges.contains_key(&edge_key(u, v))
    }

    pub fn add_vertex(&mut self, p: Point) -> Result<()> {
        if self.vertices.contains_key(&p) {
            return Err(Error::InvalidGraph(format!("duplicate vertex {p}")));
        }
        self.vertices.insert(p, Tags::new());
        self.adj.insert(p, BTreeSet::new());
        Ok(())
    }

    /// Adds `p` unless already present.
    pub fn ensure_vertex(&mut self, p: Point) {
        if !self.has_vertex(p) {
            self.vertices.insert(p, Tags::new());
            self.adj.insert(p, BTreeSet::new());
        }
    }

    pub fn add_edge(&mut self, u: Point, v: Point, weight: Rational) -> Result<()> {
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at {u}")));
        }
        for p in [u, v] {
            if !self.has_vertex(p) {
                return Err(Error::MissingVertex(p));
            }
        }
        if !weight.is_positive() {
            return Err(Error::InvalidGraph(format!("nonpositive weight {weight} on {u}-{v}")));
        }
        let key = edge_key(u, v);
        if self.edges.contains_key(&key) {
            return Err(Error::InvalidGraph(format!("parallel edge {u}-{v}")));
        }
        self.edges.insert(key, Edge { weight, tags: Tags::new() });
        self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        Ok(())
    }

    /// Adds both endpoints if needed, then the edge.
    pub fn connect(&mut self, u: Point, v: Point, weight: Rational) -> Result<()> {
        self.ensure_vertex(u);
        self.ensure_vertex(v);
        self.add_edge(u, v, weight)
    }

    pub fn remove_edge(&mut self, u: Point, v: Point) -> Option<Edge> {
        let e = self.edges.remove(&edge_key(u, v))?;
        self.adj.get_mut(&u).unwrap().remove(&v);
        self.adj.get_mut(&v).unwrap().remove(&u);
        Some(e)
    }

    /// Removes `p` and, silently, its incident edges.
    pub fn remove_vertex(&mut self, p: Point) -> Option<Tags> {
        let nbrs = self.adj.remove(&p)?;
        for q in nbrs {
            self.edges.remove(&edge_key(p, q));
            self.adj.get_mut(&q).unwrap().remove(&p);
        }
        self.vertices.remove(&p)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Point> + '_ {
        self.vertices.keys().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (Point, Point, &Edge)> + '_ {
        self.edges.iter().map(|(&(u, v), e)| (u, v, e))
    }

    pub fn edge(&self, u: Point, v: Point) -> Option<&Edge> {
        self.edges.get(&edge_key(u, v))
    }

    pub fn weight(&self, u: Point, v: Point) -> Option<&Rational> {
        self.edge(u, v).map(|e| &e.weight)
    }

    pub fn set_weight(&mut self, u: Point, v: Point, w: Rational) -> Result<()> {
        if !w.is_positive() {
            return Err(Error::InvalidGraph(format!("nonpositive weight {w}")));
        }
        let e = self
            .edges
            .get_mut(&edge_key(u, v))
            .ok_or_else(|| Error::InvalidGraph(format!("no edge {u}-{v}")))?;
        e.weight = w;
        Ok(())
    }

    pub fn neighbors(&self, p: Point) -> impl Iterator<Item = Point> + '_ {
        self.adj.get(&p).into_iter().flatten().copied()
    }

    pub fn degree(&self, p: Point) -> usize {
        self.adj.get(&p).map_or(0, BTreeSet::len)
    }

    pub fn vertex_tags(&self, p: Point) -> Option<&Tags> {
        self.vertices.get(&p)
    }

    pub fn has_tag(&self, p: Point, tag: &str) -> bool {
        self.vertices.get(&p).is_some_and(|t| t.contains(tag))
    }

    pub fn tag_vertex(&mut self, p: Point, tag: &str) -> Result<()> {
        self.vertices
            .get_mut(&p)
            .ok_or(Error::MissingVertex(p))?
            .insert(tag.to_string());
        Ok(())
    }

    pub fn set_vertex_tags(&mut self, p: Point, tags: Tags) -> Result<()> {
        *self.vertices.get_mut(&p).ok_or(Error::MissingVertex(p))? = tags;
        Ok(())
    }

    pub fn tag_edge(&mut self, u: Point, v: Point, tag: &str) -> Result<()> {
        self.edges
            .get_mut(&edge_key(u, v))
            .ok_or_else(|| Error::InvalidGraph(format!("no edge {u}-{v}")))?
            .tags
            .insert(tag.to_string());
        Ok(())
    }

    /// Vertex ids in reading order.
    pub fn index(&self) -> BTreeMap<Point, usize> {
        self.vertices().enumerate().map(|(i, p)| (p, i)).collect()
    }

    /// Applies an injective coordinate map.
    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> Result<Self> {
        let mut g = Self::new();
        for (&p, tags) in &self.vertices {
            let q = f(p);
            g.add_vertex(q)?;
            g.vertices.insert(q, tags.clone());
        }
        for (&(u, v), e) in &self.edges {
            g.add_edge(f(u), f(v), e.weight.clone())?;
            g.edges.get_mut(&edge_key(f(u), f(v))).unwrap().tags = e.tags.clone();
        }
        Ok(g)
    }

    pub fn translate(&self, dx: i64, dy: i64) -> Self {
        self.map_points(|p| p.offset(dx, dy)).expect("translation is injective")
    }

    pub fn scale(&self, k: i64) -> Self {
        assert!(k > 0, "scale factor must be positive");
        self.map_points(|p| pt(k * p.x, k * p.y)).expect("scaling is injective")
    }

    /// `(min_x, min_y, max_x, max_y)`.
    pub fn bounding_box(&self) -> Option<(i64, i64, i64, i64)> {
        let mut it = self.vertices();
        let first = it.next()?;
        Some(it.fold((first.x, first.y, first.x, first.y), |(a, b, c, d), p| {
            (a.min(p.x), b.min(p.y), c.max(p.x), d.max(p.y))
        }))
    }

    /// Left-right reflection inside the bounding box.
    pub fn mirror(&self) -> Self {
        match self.bounding_box() {
            None => self.clone(),
            Some((x0, _, x1, _)) => self.map_points(|p| pt(x0 + x1 - p.x, p.y)).expect("reflection is injective"),
        }
    }

    /// Translate so the bounding box starts at the origin, then divide by
    /// the gcd of all coordinates. Tags are dropped.
    pub fn normalized(&self) -> Self {
        let Some((x0, y0, _, _)) = self.bounding_box() else {
            return Self::new();
        };
        let g = self
            .vertices()
            .fold(0i64, |acc, p| acc.gcd(&(p.x - x0)).gcd(&(p.y - y0)))
            .max(1);
        let mut out = self
            .map_points(|p| pt((p.x - x0) / g, (p.y - y0) / g))
            .expect("normalization is injective");
        for t in out.vertices.values_mut() {
            t.clear();
        }
        for e in out.edges.values_mut() {
            e.tags.clear();
        }
        out
    }

    /// Equal up to translation and uniform positive scaling, with weights.
    pub fn coordinate_isomorphic(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    pub fn connected_components(&self) -> Vec<Vec<Point>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for p in self.vertices() {
            if !seen.insert(p) {
                continue;
            }
            let mut comp = vec![p];
            let mut queue = VecDeque::from([p]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if seen.insert(v) {
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn induced(&self, points: &[Point]) -> Self {
        let keep: BTreeSet<Point> = points.iter().copied().collect();
        let mut g = Self::new();
        for &p in &keep {
            g.vertices.insert(p, self.vertices[&p].clone());
            g.adj.insert(p, BTreeSet::new());
        }
        for (&(u, v), e) in &self.edges {
            if keep.contains(&u) && keep.contains(&v) {
                g.edges.insert((u, v), e.clone());
                g.adj.get_mut(&u).unwrap().insert(v);
                g.adj.get_mut(&v).unwrap().insert(u);
            }
        }
        g
    }

    pub fn is_bipartite(&self) -> bool {
        let mut color: BTreeMap<Point, bool> = BTreeMap::new();
        for start in self.vertices() {
            if color.contains_key(&start) {
                continue;
            }
            color.insert(start, false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let cu = color[&u];
                for v in self.neighbors(u) {
                    match color.get(&v) {
                        Some(&cv) if cv == cu => return false,
                        Some(_) => {}
                        None => {
                            color.insert(v, !cu);
                            queue.push_back(v);
                        }
                    }
                }
            }
        }
        true
    }

    /// Replaces every weight by `f(u, v, w)`.
    pub fn map_weights(&self, f: impl Fn(Point, Point, &Rational) -> Rational) -> Result<Self> {
        let mut g = self.clone();
        for (&(u, v), e) in g.edges.iter_mut() {
            let w = f(u, v, &e.weight);
            if !w.is_positive() {
                return Err(Error::InvalidGraph(format!("nonpositive weight {w}")));
            }
            e.weight = w;
        }
        Ok(g)
    }
}

#[derive(Serialize, Deserialize)]
struct VertexJson {
    id: usize,
    x: i64,
    y: i64,
    #[serde(default)]
    tags: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct EdgeJson {
    u: usize,
    v: usize,
    #[serde(with = "serde_rational")]
    w: Rational,
    #[serde(default)]
    tags: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

impl Serialize for WeightedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let index = self.index();
        let json = GraphJson {
            vertices: self
                .vertices
                .iter()
                .map(|(p, t)| VertexJson { id: index[p], x: p.x, y: p.y, tags: t.iter().cloned().collect() })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|((u, v), e)| EdgeJson {
                    u: index[u],
                    v: index[v],
                    w: e.weight.clone(),
                    tags: e.tags.iter().cloned().collect(),
                })
                .collect(),
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = GraphJson::deserialize(d)?;
        let mut by_id = BTreeMap::new();
        let mut g = WeightedGraph::new();
        for v in json.vertices {
            let p = pt(v.x, v.y);
            g.add_vertex(p).map_err(D::Error::custom)?;
            g.set_vertex_tags(p, v.tags.into_iter().collect()).map_err(D::Error::custom)?;
            if by_id.insert(v.id, p).is_some() {
                return Err(D::Error::custom(format!("duplicate vertex id {}", v.id)));
            }
        }
        for e in json.edges {
            let lookup = |id: usize| by_id.get(&id).copied().ok_or_else(|| D::Error::custom(format!("unknown vertex id {id}")));
            let (u, v) = (lookup(e.u)?, lookup(e.v)?);
            g.add_edge(u, v, e.w).map_err(D::Error::custom)?;
            for t in e.tags {
                g.tag_edge(u, v, &t).map_err(D::Error::custom)?;
            }
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn square() -> WeightedGraph {
        let mut g = WeightedGraph::new();
        let c = [pt(0, 0), pt(1, 1), pt(2, 0), pt(1, -1)];
        for i in 0..4 {
            g.connect(c[i], c[(i + 1) % 4], rat(1, 1)).unwrap();
        }
        g
    }

    #[test]
    fn reading_order() {
        let mut ps = vec![pt(0, 0), pt(5, 1), pt(-1, 1), pt(3, -2)];
        ps.sort();
        assert_eq!(ps, vec![pt(-1, 1), pt(5, 1), pt(0, 0), pt(3, -2)]);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = square();
        assert!(g.add_edge(pt(0, 0), pt(0, 0), rat(1, 1)).is_err());
        assert!(g.add_edge(pt(0, 0), pt(1, 1), rat(1, 1)).is_err());
        assert!(g.add_edge(pt(0, 0), pt(2, 0), rat(0, 1)).is_err());
        assert!(g.add_edge(pt(0, 0), pt(9, 9), rat(1, 1)).is_err());
        assert!(g.add_vertex(pt(0, 0)).is_err());
    }

    #[test]
    fn removal_is_silent() {
        let mut g = square();
        g.remove_vertex(pt(1, 1));
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.degree(pt(0, 0)), 1);
    }

    #[test]
    fn mirror_and_normalize() {
        let mut g = square();
        g.connect(pt(2, 0), pt(4, 0), rat(1, 2)).unwrap();
        let m = g.mirror();
        assert!(m.has_edge(pt(0, 0), pt(2, 0)));
        assert_eq!(m.weight(pt(0, 0), pt(2, 0)), Some(&rat(1, 2)));
        assert_eq!(m.mirror(), g);
        let big = g.scale(4).translate(7, -3);
        assert!(big.coordinate_isomorphic(&g));
        assert!(!m.coordinate_isomorphic(&g));
    }

    #[test]
    fn json_round_trip() {
        let mut g = square();
        g.tag_vertex(pt(1, 1), "tooth").unwrap();
        g.set_weight(pt(0, 0), pt(1, 1), rat(2, 3)).unwrap();
        let js = serde_json::to_string(&g).unwrap();
        assert!(js.contains("\"w\":\"2/3\""));
        let back: WeightedGraph = serde_json::from_str(&js).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn components_and_parity() {
        let mut g = square();
        g.connect(pt(10, 0), pt(11, 1), rat(1, 1)).unwrap();
        assert_eq!(g.connected_components().len(), 2);
        assert!(g.is_bipartite());
        g.connect(pt(0, 0), pt(2, 0), rat(1, 1)).unwrap();
        assert!(!g.is_bipartite());
    }
}
