//! Urban renewal: a 4-cycle of degree-3 vertices, each hanging off a
//! distinct outer vertex by a weight-1 edge, is contracted onto its outer
//! vertices with reweighted cycle edges.

use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

use super::ops::AUX;
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::graph::{pt, Point, WeightedGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenewalSite {
    /// Cycle vertices in cyclic order.
    pub corners: [Point; 4],
    /// `outers[k]` is attached to `corners[k]`.
    pub outers: [Point; 4],
}

impl RenewalSite {
    /// Sum of the corners, i.e. four times the center.
    pub fn center4(&self) -> Point {
        self.corners.iter().fold(pt(0, 0), |acc, p| acc.offset(p.x, p.y))
    }

    /// `w[k]` is the weight of the cycle edge `corners[k] - corners[k+1]`.
    pub fn inner_weights(&self, g: &WeightedGraph) -> Result<[Rational; 4]> {
        let w = |k: usize| {
            g.weight(self.corners[k], self.corners[(k + 1) % 4])
                .cloned()
                .ok_or_else(|| Error::Precondition(format!("missing cycle edge at {}", self.corners[k])))
        };
        Ok([w(0)?, w(1)?, w(2)?, w(3)?])
    }

    fn inner(&self) -> BTreeSet<Point> {
        self.corners.iter().copied().collect()
    }

    fn outer(&self) -> BTreeSet<Point> {
        self.outers.iter().copied().collect()
    }
}

/// New cycle weights and the factor `ac + bd`: each edge takes the weight
/// of the opposite edge divided by the factor.
pub fn renewal_weights(w: &[Rational; 4]) -> ([Rational; 4], Rational) {
    let s = &w[0] * &w[2] + &w[1] * &w[3];
    let new = [&w[2] / &s, &w[3] / &s, &w[0] / &s, &w[1] / &s];
    (new, s)
}

fn not_a_site(msg: String) -> Error {
    Error::Precondition(format!("not a renewal site: {msg}"))
}

/// Validates the pattern on the given corner set and orders it.
pub fn site_at(g: &WeightedGraph, corners: &[Point]) -> Result<RenewalSite> {
    let set: BTreeSet<Point> = corners.iter().copied().collect();
    if corners.len() != 4 || set.len() != 4 {
        return Err(not_a_site(format!("need four distinct corners, got {corners:?}")));
    }
    for &p in &set {
        if !g.has_vertex(p) {
            return Err(Error::MissingVertex(p));
        }
        if g.degree(p) != 3 {
            return Err(not_a_site(format!("corner {p} has degree {}", g.degree(p))));
        }
        if g.neighbors(p).filter(|q| set.contains(q)).count() != 2 {
            return Err(not_a_site(format!("corner {p} does not lie on a chordless 4-cycle")));
        }
    }
    let start = *set.iter().next().unwrap();
    let next = g.neighbors(start).find(|q| set.contains(q)).unwrap();
    let opposite = *set.iter().find(|&&q| q != start && !g.has_edge(start, q)).unwrap();
    let last = *set.iter().find(|&&q| q != start && q != next && q != opposite).unwrap();
    if !g.has_edge(next, opposite) || !g.has_edge(opposite, last) {
        return Err(not_a_site("corners do not form a 4-cycle".into()));
    }
    let ordered = [start, next, opposite, last];
    let mut outers = [start; 4];
    for (k, &c) in ordered.iter().enumerate() {
        let o = g.neighbors(c).find(|q| !set.contains(q)).unwrap();
        if !g.weight(c, o).unwrap().is_one() {
            return Err(not_a_site(format!("attachment {c}-{o} does not have weight 1")));
        }
        outers[k] = o;
    }
    let distinct: BTreeSet<Point> = outers.iter().copied().collect();
    if distinct.len() != 4 {
        return Err(Error::DegenerateSite(format!("corners {ordered:?} share outer vertices {outers:?}")));
    }
    for k in 0..4 {
        let (a, b) = (outers[k], outers[(k + 1) % 4]);
        if g.has_edge(a, b) {
            return Err(Error::DegenerateSite(format!("outer vertices {a} and {b} are already adjacent")));
        }
    }
    Ok(RenewalSite { corners: ordered, outers })
}

/// Every site in coordinate order of centers, keeping a site only if its
/// corners avoid all vertices of earlier kept sites and its outer vertices
/// avoid their corners. Outer vertices may be shared.
pub fn find_renewal_sites(g: &WeightedGraph) -> Vec<RenewalSite> {
    let mut seen = BTreeSet::new();
    let mut candidates = Vec::new();
    for a in g.vertices().filter(|&a| g.degree(a) == 3) {
        let nb: Vec<Point> = g.neighbors(a).collect();
        for (i, &b) in nb.iter().enumerate() {
            for &d in &nb[i + 1..] {
                for c in g.neighbors(b).filter(|&c| c != a && c != d && g.has_edge(c, d)) {
                    let mut key = [a, b, c, d];
                    key.sort();
                    if seen.insert(key) {
                        if let Ok(site) = site_at(g, &key) {
                            candidates.push(site);
                        }
                    }
                }
            }
        }
    }
    candidates.sort_by_key(|s| (s.center4(), s.corners));
    let mut used_inner = BTreeSet::new();
    let mut used_all = BTreeSet::new();
    let mut out = Vec::new();
    for s in candidates {
        if !s.inner().is_disjoint(&used_all) || !s.outer().is_disjoint(&used_inner) {
            continue;
        }
        used_inner.extend(s.inner());
        used_all.extend(s.inner());
        used_all.extend(s.outer());
        out.push(s);
    }
    out
}

/// Moves `from` to the free position `to`, carrying its edges.
fn relocate(g: &mut WeightedGraph, from: Point, to: Point, tags: crate::graph::Tags) -> Result<()> {
    let edges: Vec<(Point, crate::graph::Edge)> =
        g.neighbors(from).map(|q| (q, g.edge(from, q).unwrap().clone())).collect::<Vec<_>>();
    g.remove_vertex(from);
    g.add_vertex(to)?;
    g.set_vertex_tags(to, tags)?;
    for (q, e) in edges {
        g.add_edge(to, q, e.weight)?;
        for t in &e.tags {
            g.tag_edge(to, q, t)?;
        }
    }
    Ok(())
}

/// Contracts the four attachments and reweights the cycle. Returns the
/// rewritten graph and the factor `ac + bd`, with `M(G) = factor * M(G')`.
///
/// A merged vertex sits where its outer vertex was, except when the outer
/// vertex is an auxiliary split vertex and the corner is not; then it
/// takes the corner's place and tags.
pub fn apply_urban_renewal(g: &WeightedGraph, site: &RenewalSite) -> Result<(WeightedGraph, Rational)> {
    let checked = site_at(g, &site.corners)?;
    if checked.outer() != site.outer() {
        return Err(not_a_site(format!("outer vertices {:?} do not match the graph", site.outers)));
    }
    let w = checked.inner_weights(g)?;
    let (new, factor) = renewal_weights(&w);
    let mut h = g.clone();
    let mut positions = checked.outers;
    let mut moves = Vec::new();
    for k in 0..4 {
        let (c, o) = (checked.corners[k], checked.outers[k]);
        if g.has_tag(o, AUX) && !g.has_tag(c, AUX) {
            positions[k] = c;
            moves.push((o, c, g.vertex_tags(c).unwrap().clone()));
        }
        h.remove_vertex(c);
    }
    for (from, to, tags) in moves {
        relocate(&mut h, from, to, tags)?;
    }
    for k in 0..4 {
        h.add_edge(positions[k], positions[(k + 1) % 4], new[k].clone())?;
    }
    Ok((h, factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::matchings::matching_sum_bruteforce;

    /// Diamond at the origin, attachments out to distance 3, and an outer
    /// 8-cycle through the attachments.
    pub(crate) fn host(w: [Rational; 4]) -> WeightedGraph {
        let corners = [pt(-1, 0), pt(0, 1), pt(1, 0), pt(0, -1)];
        let mut g = WeightedGraph::new();
        for k in 0..4 {
            g.connect(corners[k], corners[(k + 1) % 4], w[k].clone()).unwrap();
            g.connect(corners[k], pt(3 * corners[k].x, 3 * corners[k].y), rat(1, 1)).unwrap();
        }
        let ring = [pt(-3, 0), pt(-3, 3), pt(0, 3), pt(3, 3), pt(3, 0), pt(3, -3), pt(0, -3), pt(-3, -3)];
        for k in 0..8 {
            g.connect(ring[k], ring[(k + 1) % 8], rat(k as i64 + 1, 2)).unwrap();
        }
        g
    }

    #[test]
    fn unit_and_half_weights() {
        let (new, s) = renewal_weights(&[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
        assert_eq!(s, rat(2, 1));
        assert!(new.iter().all(|x| *x == rat(1, 2)));
        let (new, s) = renewal_weights(&[rat(1, 2), rat(1, 2), rat(1, 2), rat(1, 2)]);
        assert_eq!(s, rat(1, 2));
        assert!(new.iter().all(|x| *x == rat(1, 1)));
    }

    #[test]
    fn renewal_preserves_matching_sum() {
        let g = host([rat(2, 3), rat(5, 1), rat(1, 7), rat(3, 4)]);
        let sites = find_renewal_sites(&g);
        assert_eq!(sites.len(), 1);
        let (h, factor) = apply_urban_renewal(&g, &sites[0]).unwrap();
        assert_eq!(h.vertex_count(), g.vertex_count() - 4);
        assert_eq!(matching_sum_bruteforce(&g).value, factor * matching_sum_bruteforce(&h).value);
    }

    #[test]
    fn bare_cycle_is_not_a_site() {
        let g = crate::builders::build_aztec_rectangle(1, 1);
        assert!(find_renewal_sites(&g).is_empty());
    }

    #[test]
    fn shared_outer_is_degenerate() {
        let mut g = WeightedGraph::new();
        let corners = [pt(-1, 0), pt(0, 1), pt(1, 0), pt(0, -1)];
        for k in 0..4 {
            g.connect(corners[k], corners[(k + 1) % 4], rat(1, 1)).unwrap();
        }
        g.connect(pt(-1, 0), pt(-3, 3), rat(1, 1)).unwrap();
        g.connect(pt(0, 1), pt(-3, 3), rat(1, 1)).unwrap();
        g.connect(pt(1, 0), pt(3, 0), rat(1, 1)).unwrap();
        g.connect(pt(0, -1), pt(0, -3), rat(1, 1)).unwrap();
        assert!(matches!(site_at(&g, &corners), Err(Error::DegenerateSite(_))));
        assert!(find_renewal_sites(&g).is_empty());
    }

    #[test]
    fn weight_map_is_an_involution() {
        let w = [rat(2, 3), rat(5, 1), rat(1, 7), rat(3, 4)];
        let (once, s1) = renewal_weights(&w);
        let (twice, s2) = renewal_weights(&once);
        assert_eq!(twice, w);
        assert_eq!(s1 * s2, rat(1, 1));
    }

    #[test]
    fn heavy_attachment_is_rejected() {
        let mut g = host([rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
        g.set_weight(pt(-1, 0), pt(-3, 0), rat(2, 1)).unwrap();
        assert!(site_at(&g, &[pt(-1, 0), pt(0, 1), pt(1, 0), pt(0, -1)]).is_err());
    }
}
