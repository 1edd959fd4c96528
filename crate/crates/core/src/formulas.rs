//! Closed forms and recursions for every count the verifiers compare
//! against.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::builders::KeptPositions;
use crate::error::{Error, Result};
use crate::exact::{binom, factorial, format_rational, ipow, rat, Rational};

fn exp(v: BigInt) -> u32 {
    u32::try_from(v).expect("exponent fits in u32")
}

/// Perfect matchings of an `m x k` Aztec rectangle keeping bottom
/// positions `xs`:
/// `2^C(m+1,2) / prod (i-1)! * prod_{i<j} (x_j - x_i)`.
/// The factorial product is divided out last and must divide exactly.
pub fn aztec_rect_count(m: usize, xs: &KeptPositions) -> Result<BigInt> {
    if xs.len() != m {
        return Err(Error::Formula(format!("{} kept positions for {m} rows", xs.len())));
    }
    let x = xs.as_slice();
    let mut num = ipow(2, exp(binom(m as u64 + 1, 2)));
    for j in 0..m {
        for i in 0..j {
            num *= BigInt::from(x[j] - x[i]);
        }
    }
    let den: BigInt = (1..=m as u64).map(|i| factorial(i - 1)).product();
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Formula(format!("{num} / {den} is not an integer")));
    }
    Ok(q)
}

/// `2^(n^2)`.
pub fn theorem1_value(n: usize) -> BigInt {
    ipow(2, (n * n) as u32)
}

/// `3^n 5^C(n,2)`.
pub fn theorem2_value(n: usize) -> BigInt {
    ipow(3, n as u32) * ipow(5, exp(binom(n as u64, 2)))
}

/// Which value every `c_i` is pinned to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pinned {
    /// `c_i = n+1`
    High,
    /// `c_i = n-1`
    Low,
}

/// `5^C(n,2)`, times `2^n` when `n` is odd for [`Pinned::High`] or even
/// for [`Pinned::Low`].
pub fn theorem3_value(n: usize, pinned: Pinned) -> BigInt {
    let base = ipow(5, exp(binom(n as u64, 2)));
    let doubled = match pinned {
        Pinned::High => n % 2 == 1,
        Pinned::Low => n % 2 == 0,
    };
    if doubled {
        base * ipow(2, n as u32)
    } else {
        base
    }
}

/// `M(G_n) = 3^n 5^C(n,2) / 2^(n^2)`.
pub fn gn_value(n: usize) -> Rational {
    Rational::new(theorem2_value(n), theorem1_value(n))
}

/// `M(G_n) / M(G_{n-1}) = 3 * 5^(n-1) / 2^(2n-1)`.
pub fn gn_ratio(n: usize) -> Rational {
    assert!(n >= 2, "ratio needs n >= 2");
    Rational::new(ipow(5, n as u32 - 1) * 3, ipow(2, 2 * n as u32 - 1))
}

/// `M(G_n)` from `M(G_1) = 3/2` by the recursion.
pub fn gn_value_recursive(n: usize) -> Rational {
    assert!(n >= 1);
    (2..=n).fold(rat(3, 2), |acc, k| acc * gn_ratio(k))
}

/// `(2^C(n,2), 5^(n^2))`: the full-ASM 2-enumeration of order `n` and the
/// matchings of a `2n x 2n` fortress.
pub fn remark_values(n: usize) -> (BigInt, BigInt) {
    (ipow(2, exp(binom(n as u64, 2))), ipow(5, (n * n) as u32))
}

/// One `(n, route, value)` line of a comparison table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub n: usize,
    pub route: String,
    pub value: String,
}

impl Row {
    pub fn new(n: usize, route: &str, value: &Rational) -> Self {
        Self { n, route: route.to_string(), value: format_rational(value) }
    }

    pub fn int(n: usize, route: &str, value: &BigInt) -> Self {
        Self { n, route: route.to_string(), value: value.to_string() }
    }
}

/// Every closed form at `n`.
pub fn formula_rows(n: usize) -> Vec<Row> {
    let (full, fortress) = remark_values(n);
    let mut rows = vec![
        Row::int(n, "theorem1", &theorem1_value(n)),
        Row::int(n, "theorem2", &theorem2_value(n)),
        Row::int(n, "theorem3-high", &theorem3_value(n, Pinned::High)),
        Row::int(n, "theorem3-low", &theorem3_value(n, Pinned::Low)),
        Row::new(n, "gn-closed", &gn_value(n)),
        Row::new(n, "gn-recursion", &gn_value_recursive(n)),
        Row::int(n, "remark-full-asm", &full),
        Row::int(n, "remark-fortress", &fortress),
    ];
    if n >= 2 {
        rows.push(Row::new(n, "gn-ratio", &gn_ratio(n)));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    #[test]
    fn rectangle_counts() {
        assert_eq!(aztec_rect_count(1, &KeptPositions::new(vec![1], 1).unwrap()).unwrap(), int(2));
        assert_eq!(aztec_rect_count(2, &KeptPositions::new(vec![1, 3], 3).unwrap()).unwrap(), int(16));
        for n in 1..=6 {
            assert_eq!(aztec_rect_count(n, &KeptPositions::odd(n)).unwrap(), theorem1_value(n));
        }
        assert!(aztec_rect_count(2, &KeptPositions::new(vec![1], 3).unwrap()).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!([1, 3, 4].map(theorem1_value), [int(2), int(512), int(65536)]);
        assert_eq!([1, 2, 3, 4].map(theorem2_value), [int(3), int(45), int(3375), int(1265625)]);
        let high: Vec<BigInt> = (1..=4).map(|n| theorem3_value(n, Pinned::High)).collect();
        let low: Vec<BigInt> = (1..=4).map(|n| theorem3_value(n, Pinned::Low)).collect();
        assert_eq!(high, [2, 5, 1000, 15625].map(int));
        assert_eq!(low, [1, 20, 125, 250000].map(int));
    }

    #[test]
    fn gn_closed_form_and_recursion() {
        assert_eq!(gn_value(1), rat(3, 2));
        assert_eq!(gn_value(2), rat(45, 16));
        assert_eq!(gn_ratio(2), rat(15, 8));
        assert_eq!(gn_ratio(3), rat(75, 32));
        for n in 1..=6 {
            assert_eq!(gn_value(n), gn_value_recursive(n));
            let scaled = gn_value(n) * Rational::from_integer(theorem1_value(n));
            assert_eq!(scaled, Rational::from_integer(theorem2_value(n)));
        }
    }

    #[test]
    fn full_asm_values() {
        assert_eq!(remark_values(1), (int(1), int(5)));
        assert_eq!(remark_values(2), (int(2), int(625)));
        assert_eq!(remark_values(4).0, int(64));
    }

    #[test]
    fn rows_are_exact_strings() {
        let rows = formula_rows(2);
        assert!(rows.contains(&Row { n: 2, route: "gn-closed".into(), value: "45/16".into() }));
        assert!(rows.iter().all(|r| !r.value.contains('.')));
    }
}
