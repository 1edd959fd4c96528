//! Weighted perfect-matching sums `M(G)`.
//!
//! [`brute`] is the definition (exhaustive backtracking); [`pfaffian`]
//! evaluates the same number through a Kasteleyn orientation.

pub mod brute;
pub mod embedding;
pub mod kasteleyn;
pub mod pfaffian;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::Result;
use crate::exact::{common_denominator, Rational};
use crate::graph::{edge_key, Point, WeightedGraph};

pub use brute::{enumerate_matchings, matching_sum_bruteforce, matching_sum_bruteforce_with, visit_matchings, Enumeration};
pub use kasteleyn::{is_kasteleyn, kasteleyn_orient, Orientation};
pub use pfaffian::{matching_sum_pfaffian, pfaffian};

/// A perfect matching as a sorted list of edges.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matching(Vec<(Point, Point)>);

impl Matching {
    pub fn new(edges: impl IntoIterator<Item = (Point, Point)>) -> Self {
        let mut v: Vec<_> = edges.into_iter().map(|(u, v)| edge_key(u, v)).collect();
        v.sort();
        Self(v)
    }

    pub fn edges(&self) -> &[(Point, Point)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, u: Point, v: Point) -> bool {
        self.0.binary_search(&edge_key(u, v)).is_ok()
    }

    /// Partner of `p`, if covered.
    pub fn partner(&self, p: Point) -> Option<Point> {
        self.0.iter().find_map(|&(a, b)| {
            if a == p {
                Some(b)
            } else if b == p {
                Some(a)
            } else {
                None
            }
        })
    }

    pub fn is_perfect_in(&self, g: &WeightedGraph) -> bool {
        let mut covered = std::collections::BTreeSet::new();
        for &(u, v) in &self.0 {
            if !g.has_edge(u, v) || !covered.insert(u) || !covered.insert(v) {
                return false;
            }
        }
        covered.len() == g.vertex_count()
    }

    pub fn weight_in(&self, g: &WeightedGraph) -> Option<Rational> {
        self.0
            .iter()
            .try_fold(Rational::one(), |acc, &(u, v)| g.weight(u, v).map(|w| acc * w))
    }

    /// Sorted `[u, v]` id pairs under the graph's vertex ids.
    pub fn to_ids(&self, g: &WeightedGraph) -> Vec<[usize; 2]> {
        let index = g.index();
        let mut ids: Vec<[usize; 2]> = self
            .0
            .iter()
            .map(|(u, v)| {
                let (a, b) = (index[u], index[v]);
                [a.min(b), a.max(b)]
            })
            .collect();
        ids.sort();
        ids
    }
}

/// Exact value of `M(G)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingSum {
    #[serde(with = "crate::exact::serde_rational")]
    pub value: Rational,
}

impl std::fmt::Display for MatchingSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.value.fmt(f)
    }
}

impl From<Rational> for MatchingSum {
    fn from(value: Rational) -> Self {
        Self { value }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    Brute,
    Pfaffian,
}

pub fn matching_sum(g: &WeightedGraph, engine: Engine) -> Result<Rational> {
    match engine {
        Engine::Brute => Ok(matching_sum_bruteforce(g).value),
        Engine::Pfaffian => Ok(matching_sum_pfaffian(g)?.value),
    }
}

/// Below this size the brute-force engine is always used as the witness.
pub const ORACLE_LIMIT: usize = 34;

/// Brute force at desk scale, Pfaffian above.
pub fn matching_sum_auto(g: &WeightedGraph) -> Result<Rational> {
    if g.vertex_count() <= ORACLE_LIMIT {
        matching_sum(g, Engine::Brute)
    } else {
        matching_sum(g, Engine::Pfaffian)
    }
}

/// Dense integer form: vertex ids in reading order and every weight
/// multiplied by `scale`, the lcm of all denominators.
pub(crate) struct Indexed {
    pub points: Vec<Point>,
    pub adj: Vec<Vec<(usize, BigInt)>>,
    pub scale: BigInt,
}

impl Indexed {
    pub fn new(g: &WeightedGraph) -> Self {
        let points: Vec<Point> = g.vertices().collect();
        let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let scale = common_denominator(g.edges().map(|(_, _, e)| &e.weight));
        let mut adj = vec![Vec::new(); points.len()];
        for (u, v, e) in g.edges() {
            let w = (&e.weight * Rational::from_integer(scale.clone())).to_integer();
            let (a, b) = (index[&u], index[&v]);
            adj[a].push((b, w.clone()));
            adj[b].push((a, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(j, _)| j);
        }
        Self { points, adj, scale }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Turns a sum over matchings of scaled weights back into `M(G)`.
    pub fn unscale(&self, total: BigInt) -> Rational {
        let denom = num_traits::pow(self.scale.clone(), self.len() / 2);
        Rational::new(total, denom)
    }
}
