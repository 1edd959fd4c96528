//! Fraction-free Pfaffian elimination.
//!
//! After eliminating pivot pair `(k, k+1)` every active entry is the
//! Pfaffian of a principal minor, so the update
//! `(p * a_ij - a_ki * a_(k+1)j + a_kj * a_(k+1)i) / p_prev`
//! divides exactly (Pfaffian analogue of Sylvester's identity).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{kasteleyn_orient, Indexed, MatchingSum};
use crate::error::Result;
use crate::graph::WeightedGraph;

/// Pfaffian of a skew-symmetric integer matrix.
pub fn pfaffian(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    let mut k = 0;
    loop {
        let Some(piv) = (k + 1..n).find(|&j| !a[k][j].is_zero()) else {
            return BigInt::zero();
        };
        if piv != k + 1 {
            a.swap(piv, k + 1);
            for row in a.iter_mut() {
                row.swap(piv, k + 1);
            }
            sign = -sign;
        }
        let p = a[k][k + 1].clone();
        if k + 2 == n {
            return sign * p;
        }
        for i in k + 2..n {
            for j in i + 1..n {
                let num = &p * &a[i][j] - &a[k][i] * &a[k + 1][j] + &a[k][j] * &a[k + 1][i];
                let (q, r) = num.div_rem(&prev);
                assert!(r.is_zero(), "fraction-free Pfaffian step left a remainder");
                a[j][i] = -&q;
                a[i][j] = q;
            }
        }
        prev = p;
        k += 2;
    }
}

/// `|Pf(K)|` for the Kasteleyn matrix of each component, multiplied.
pub fn matching_sum_pfaffian(g: &WeightedGraph) -> Result<MatchingSum> {
    let orientation = kasteleyn_orient(g)?;
    if g.vertex_count() % 2 == 1 {
        return Ok(MatchingSum { value: Zero::zero() });
    }
    let ix = Indexed::new(g);
    let mut total = BigInt::one();
    for comp in g.connected_components() {
        if comp.len() % 2 == 1 {
            return Ok(MatchingSum { value: Zero::zero() });
        }
        let local: std::collections::BTreeMap<_, _> = comp.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let global = g.index();
        let mut k = vec![vec![BigInt::zero(); comp.len()]; comp.len()];
        for &u in &comp {
            for (j, w) in &ix.adj[global[&u]] {
                let v = ix.points[*j];
                if orientation.points_from(u, v) == Some(true) {
                    let (a, b) = (local[&u], local[&v]);
                    k[a][b] = w.clone();
                    k[b][a] = -w;
                }
            }
        }
        total *= pfaffian(k).abs();
        if total.is_zero() {
            break;
        }
    }
    Ok(MatchingSum { value: ix.unscale(total) })
}
