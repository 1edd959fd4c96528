//! Kasteleyn orientations from a spanning tree and its dual cotree.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::embedding::{check_planar_embedding, faces, Face};
use crate::error::Result;
use crate::graph::{edge_key, Point, WeightedGraph};

/// Direction of every edge: `true` means from the smaller endpoint (in
/// reading order) to the larger.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    forward: BTreeMap<(Point, Point), bool>,
}

impl Orientation {
    /// `Some(true)` if the edge points `u -> v`.
    pub fn points_from(&self, u: Point, v: Point) -> Option<bool> {
        let key = edge_key(u, v);
        self.forward.get(&key).map(|&f| f == (key.0 == u))
    }

    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }
}

fn clockwise_count(face: &Face, orient: &BTreeMap<(Point, Point), bool>) -> usize {
    face.walk
        .iter()
        .filter(|&&(u, v)| {
            let key = edge_key(u, v);
            let along = orient[&key] == (key.0 == u);
            !along
        })
        .count()
}

fn orient_component(g: &WeightedGraph, forward: &mut BTreeMap<(Point, Point), bool>) {
    let fs = faces(g);
    if fs.is_empty() {
        return;
    }
    let outer = (0..fs.len()).min_by_key(|&i| fs[i].area2).unwrap();

    // spanning tree by BFS from the first vertex
    let root = g.vertices().next().unwrap();
    let mut tree = BTreeSet::new();
    let mut seen = BTreeSet::from([root]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for v in g.neighbors(u) {
            if seen.insert(v) {
                tree.insert(edge_key(u, v));
                queue.push_back(v);
            }
        }
    }
    for &key in &tree {
        forward.insert(key, true);
    }

    let mut face_of: BTreeMap<(Point, Point), usize> = BTreeMap::new();
    for (i, f) in fs.iter().enumerate() {
        for &d in &f.walk {
            face_of.insert(d, i);
        }
    }
    let mut pending: Vec<BTreeSet<(Point, Point)>> = vec![BTreeSet::new(); fs.len()];
    for (u, v, _) in g.edges() {
        let key = (u, v);
        if !tree.contains(&key) {
            pending[face_of[&(u, v)]].insert(key);
            pending[face_of[&(v, u)]].insert(key);
        }
    }
    // peel cotree leaves toward the outer face
    let mut ready: VecDeque<usize> = (0..fs.len()).filter(|&i| i != outer && pending[i].len() == 1).collect();
    while let Some(f) = ready.pop_front() {
        let Some(&key) = pending[f].iter().next() else { continue };
        if pending[f].len() != 1 {
            continue;
        }
        forward.insert(key, true);
        if clockwise_count(&fs[f], forward) % 2 == 0 {
            forward.insert(key, false);
        }
        for other in [face_of[&key], face_of[&(key.1, key.0)]] {
            pending[other].remove(&key);
            if other != outer && other != f && pending[other].len() == 1 {
                ready.push_back(other);
            }
        }
    }
}

/// Orients every component so that each bounded face has an odd number of
/// clockwise edges.
pub fn kasteleyn_orient(g: &WeightedGraph) -> Result<Orientation> {
    check_planar_embedding(g)?;
    let mut forward = BTreeMap::new();
    for comp in g.connected_components() {
        orient_component(&g.induced(&comp), &mut forward);
    }
    debug_assert_eq!(forward.len(), g.edge_count());
    Ok(Orientation { forward })
}

/// Checks the odd-clockwise condition on every bounded face, component by
/// component.
pub fn is_kasteleyn(g: &WeightedGraph, o: &Orientation) -> bool {
    g.connected_components().iter().all(|comp| {
        let sub = g.induced(comp);
        let fs = faces(&sub);
        let Some(outer) = (0..fs.len()).min_by_key(|&i| fs[i].area2) else {
            return true;
        };
        fs.iter()
            .enumerate()
            .filter(|&(i, _)| i != outer)
            .all(|(_, f)| clockwise_count(f, &o.forward) % 2 == 1)
    })
}
