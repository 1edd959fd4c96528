//! Exhaustive backtracking on the lowest-id unmatched vertex.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Indexed, Matching, MatchingSum};
use crate::graph::WeightedGraph;
use crate::par::{self, Execution};

pub struct Enumeration {
    pub matchings: Vec<Matching>,
    /// Set when the graph cannot have a perfect matching for a trivial reason.
    pub diagnostic: Option<String>,
}

fn first_free(matched: &[bool], from: usize) -> Option<usize> {
    (from..matched.len()).find(|&i| !matched[i])
}

fn sum_from(ix: &Indexed, matched: &mut [bool], from: usize) -> BigInt {
    let Some(i) = first_free(matched, from) else {
        return BigInt::one();
    };
    matched[i] = true;
    let mut total = BigInt::zero();
    for (j, w) in &ix.adj[i] {
        if !matched[*j] {
            matched[*j] = true;
            let rest = sum_from(ix, matched, i + 1);
            if !rest.is_zero() {
                total += w * rest;
            }
            matched[*j] = false;
        }
    }
    matched[i] = false;
    total
}

fn walk(ix: &Indexed, matched: &mut [bool], from: usize, stack: &mut Vec<(usize, usize)>, visit: &mut dyn FnMut(&[(usize, usize)])) {
    let Some(i) = first_free(matched, from) else {
        visit(stack);
        return;
    };
    matched[i] = true;
    for (j, _) in &ix.adj[i] {
        if !matched[*j] {
            matched[*j] = true;
            stack.push((i, *j));
            walk(ix, matched, i + 1, stack, visit);
            stack.pop();
            matched[*j] = false;
        }
    }
    matched[i] = false;
}

fn to_matching(ix: &Indexed, pairs: &[(usize, usize)]) -> Matching {
    Matching::new(pairs.iter().map(|&(a, b)| (ix.points[a], ix.points[b])))
}

/// Calls `visit` on every perfect matching, in search order.
pub fn visit_matchings(g: &WeightedGraph, mut visit: impl FnMut(&Matching)) {
    if g.vertex_count() % 2 == 1 {
        return;
    }
    let ix = Indexed::new(g);
    let mut matched = vec![false; ix.len()];
    walk(&ix, &mut matched, 0, &mut Vec::new(), &mut |pairs| visit(&to_matching(&ix, pairs)));
}

/// Every perfect matching exactly once. The search splits on the choices of
/// vertex 0 and concatenates branches in order, so the output is the same
/// with or without the `parallel` feature.
pub fn enumerate_matchings(g: &WeightedGraph) -> Enumeration {
    if g.vertex_count() % 2 == 1 {
        return Enumeration {
            matchings: Vec::new(),
            diagnostic: Some(format!("odd vertex count {}: no perfect matching", g.vertex_count())),
        };
    }
    let ix = Indexed::new(g);
    if ix.len() == 0 {
        return Enumeration { matchings: vec![Matching::new([])], diagnostic: None };
    }
    let firsts: Vec<usize> = ix.adj[0].iter().map(|(j, _)| *j).collect();
    let branches = par::map(firsts, |j| {
        let mut matched = vec![false; ix.len()];
        matched[0] = true;
        matched[j] = true;
        let mut out = Vec::new();
        walk(&ix, &mut matched, 1, &mut vec![(0, j)], &mut |pairs| out.push(to_matching(&ix, pairs)));
        out
    });
    Enumeration { matchings: branches.into_iter().flatten().collect(), diagnostic: None }
}

pub fn matching_sum_bruteforce(g: &WeightedGraph) -> MatchingSum {
    matching_sum_bruteforce_with(Execution::default(), g)
}

pub fn matching_sum_bruteforce_with(exec: Execution, g: &WeightedGraph) -> MatchingSum {
    if g.vertex_count() % 2 == 1 {
        return MatchingSum { value: Zero::zero() };
    }
    let ix = Indexed::new(g);
    if ix.len() == 0 {
        return MatchingSum { value: One::one() };
    }
    let firsts: Vec<(usize, BigInt)> = ix.adj[0].clone();
    let parts = par::map_with(exec, firsts, |(j, w)| {
        let mut matched = vec![false; ix.len()];
        matched[0] = true;
        matched[j] = true;
        w * sum_from(&ix, &mut matched, 1)
    });
    MatchingSum { value: ix.unscale(parts.into_iter().sum()) }
}
