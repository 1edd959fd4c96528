//! Full and halved alternating sign matrices, their height matrices and
//! weighted enumeration.
//!
//! Entry indices are 1-based (`a[i][j]`, `1 <= i, j`), heights 0-based, so
//! "even position" means `i + j` even in the 1-based entry convention.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::ipow;
use crate::par::{self, Execution};

/// Rectangular matrix with entries in {-1, 0, 1}, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignMatrix {
    rows: Vec<Vec<i8>>,
}

impl SignMatrix {
    pub fn new(rows: Vec<Vec<i8>>) -> Result<Self> {
        let width = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidAsm("ragged rows".into()));
        }
        if rows.iter().flatten().any(|&e| !(-1..=1).contains(&e)) {
            return Err(Error::InvalidAsm("entries must be -1, 0 or 1".into()));
        }
        Ok(Self { rows })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.rows[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[Vec<i8>] {
        &self.rows
    }

    pub fn reflect_horizontal(&self) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().rev().copied().collect())
            .collect();
        Self { rows }
    }
}

impl fmt::Display for SignMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, row) in self.rows.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            let cells: Vec<String> = row.iter().map(i8::to_string).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    BadShape,
    NotAlternatingRow,
    NotAlternatingColumn,
    RowSum,
    ColumnSum,
    TopmostNotOne,
}

/// First violated constraint with its (1-based) location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub row: Option<usize>,
    pub col: Option<usize>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)?;
        match (self.row, self.col) {
            (Some(i), Some(j)) => write!(f, " at ({i},{j})"),
            (Some(i), None) => write!(f, " in row {i}"),
            (None, Some(j)) => write!(f, " in column {j}"),
            (None, None) => Ok(()),
        }
    }
}

fn violation(kind: ViolationKind, row: Option<usize>, col: Option<usize>, message: &str) -> Violation {
    Violation { kind, row, col, message: message.to_string() }
}

/// Walks a line of entries; nonzeros must alternate starting with +1.
/// Returns the index (1-based) of the first bad entry.
fn alternation_break(line: impl Iterator<Item = i8>) -> Option<usize> {
    let mut last = -1i8;
    for (k, e) in line.enumerate() {
        if e != 0 {
            if e == last {
                return Some(k + 1);
            }
            last = e;
        }
    }
    None
}

fn check_rows(m: &SignMatrix) -> std::result::Result<(), Violation> {
    for (i, row) in m.rows.iter().enumerate() {
        if let Some(j) = alternation_break(row.iter().copied()) {
            return Err(violation(ViolationKind::NotAlternatingRow, Some(i + 1), Some(j), "nonzero entries do not alternate"));
        }
        if row.iter().map(|&e| e as i32).sum::<i32>() != 1 {
            return Err(violation(ViolationKind::RowSum, Some(i + 1), None, "row sum != 1"));
        }
    }
    Ok(())
}

pub fn validate_full(m: &SignMatrix) -> std::result::Result<(), Violation> {
    if m.n_rows() != m.n_cols() || m.n_rows() == 0 {
        return Err(violation(ViolationKind::BadShape, None, None, "full ASM must be square and nonempty"));
    }
    check_rows(m)?;
    for j in 1..=m.n_cols() {
        let col = (1..=m.n_rows()).map(|i| m.get(i, j));
        if let Some(i) = alternation_break(col.clone()) {
            return Err(violation(ViolationKind::NotAlternatingColumn, Some(i), Some(j), "nonzero entries do not alternate"));
        }
        if col.map(|e| e as i32).sum::<i32>() != 1 {
            return Err(violation(ViolationKind::ColumnSum, None, Some(j), "column sum != 1"));
        }
    }
    Ok(())
}

/// Checks exactly the stated halved constraints: alternation in rows and
/// columns, unit row sums, topmost nonzero of each column equal to 1.
pub fn validate_halved(m: &SignMatrix) -> std::result::Result<(), Violation> {
    if m.n_rows() == 0 || m.n_cols() != 2 * m.n_rows() {
        return Err(violation(ViolationKind::BadShape, None, None, "halved ASM must be n x 2n with n >= 1"));
    }
    check_rows(m)?;
    for j in 1..=m.n_cols() {
        let col: Vec<i8> = (1..=m.n_rows()).map(|i| m.get(i, j)).collect();
        if let Some(i) = col.iter().position(|&e| e != 0) {
            if col[i] != 1 {
                return Err(violation(ViolationKind::TopmostNotOne, Some(i + 1), Some(j), "topmost nonzero is -1"));
            }
        }
        if let Some(i) = alternation_break(col.iter().copied()) {
            return Err(violation(ViolationKind::NotAlternatingColumn, Some(i), Some(j), "nonzero entries do not alternate"));
        }
    }
    Ok(())
}

/// Common view of both matrix kinds.
pub trait AsmLike {
    fn matrix(&self) -> &SignMatrix;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SignMatrix", into = "SignMatrix")]
pub struct FullAsm(SignMatrix);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "SignMatrix", into = "SignMatrix")]
pub struct HalvedAsm(SignMatrix);

impl AsmLike for FullAsm {
    fn matrix(&self) -> &SignMatrix {
        &self.0
    }
}

impl AsmLike for HalvedAsm {
    fn matrix(&self) -> &SignMatrix {
        &self.0
    }
}

impl TryFrom<SignMatrix> for FullAsm {
    type Error = Error;
    fn try_from(m: SignMatrix) -> Result<Self> {
        validate_full(&m).map_err(|v| Error::InvalidAsm(v.to_string()))?;
        Ok(Self(m))
    }
}

impl TryFrom<SignMatrix> for HalvedAsm {
    type Error = Error;
    fn try_from(m: SignMatrix) -> Result<Self> {
        validate_halved(&m).map_err(|v| Error::InvalidAsm(v.to_string()))?;
        Ok(Self(m))
    }
}

impl From<FullAsm> for SignMatrix {
    fn from(a: FullAsm) -> Self {
        a.0
    }
}

impl From<HalvedAsm> for SignMatrix {
    fn from(a: HalvedAsm) -> Self {
        a.0
    }
}

impl FullAsm {
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        SignMatrix::new(rows)?.try_into()
    }

    pub fn order(&self) -> usize {
        self.0.n_rows()
    }

    pub fn reflect(&self) -> Self {
        Self(self.0.reflect_horizontal())
    }
}

impl HalvedAsm {
    pub fn from_rows(rows: Vec<Vec<i8>>) -> Result<Self> {
        SignMatrix::new(rows)?.try_into()
    }

    /// `n` for a halved ASM of order `2n`.
    pub fn n(&self) -> usize {
        self.0.n_rows()
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.0.get(i, j)
    }

    pub fn reflect(&self) -> Self {
        Self(self.0.reflect_horizontal())
    }

    /// `c_1..c_n` read off the bottom height row, or `None` when the matrix
    /// is not of the boundary form used throughout.
    pub fn bottom_heights(&self) -> Option<Vec<BottomHeight>> {
        height_from_asm(self).bottom_heights()
    }
}

impl fmt::Display for HalvedAsm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl fmt::Display for FullAsm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HeightMatrix {
    h: Vec<Vec<i64>>,
}

impl HeightMatrix {
    pub fn new(h: Vec<Vec<i64>>) -> Result<Self> {
        let width = h.first().map_or(0, Vec::len);
        if h.len() < 2 || width < 2 || h.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidAsm("height matrix must be a rectangle of size at least 2x2".into()));
        }
        for i in 0..h.len() {
            for j in 0..width {
                let right = j + 1 < width && (h[i][j] - h[i][j + 1]).abs() != 1;
                let down = i + 1 < h.len() && (h[i][j] - h[i + 1][j]).abs() != 1;
                if right || down {
                    return Err(Error::InvalidAsm(format!("adjacent heights differ by more than one near ({i},{j})")));
                }
            }
        }
        Ok(Self { h })
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.h
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.h[i][j]
    }

    /// Last row index (`n` or `k`).
    pub fn r(&self) -> usize {
        self.h.len() - 1
    }

    /// Last column index (`2n` or `k`).
    pub fn c(&self) -> usize {
        self.h[0].len() - 1
    }

    /// Bottom `c_i` values when the last row reads `n, c_1, n, c_2, ..., c_n, n`.
    pub fn bottom_heights(&self) -> Option<Vec<BottomHeight>> {
        let n = self.r() as i64;
        let last = self.h.last()?;
        if self.c() != 2 * self.r() {
            return None;
        }
        if last.iter().step_by(2).any(|&v| v != n) {
            return None;
        }
        last.iter()
            .skip(1)
            .step_by(2)
            .map(|&v| match v - n {
                -1 => Some(BottomHeight::Low),
                1 => Some(BottomHeight::High),
                _ => None,
            })
            .collect()
    }
}

/// `h[i][j] = i + j - 2 * sum_{l <= i, r <= j} a[l][r]`.
pub fn height_from_asm<A: AsmLike + ?Sized>(a: &A) -> HeightMatrix {
    let m = a.matrix();
    let (rows, cols) = (m.n_rows(), m.n_cols());
    let mut partial = vec![vec![0i64; cols + 1]; rows + 1];
    let mut h = vec![vec![0i64; cols + 1]; rows + 1];
    for i in 0..=rows {
        for j in 0..=cols {
            if i > 0 && j > 0 {
                partial[i][j] = partial[i - 1][j] + partial[i][j - 1] - partial[i - 1][j - 1] + m.get(i, j) as i64;
            }
            h[i][j] = i as i64 + j as i64 - 2 * partial[i][j];
        }
    }
    HeightMatrix { h }
}

/// Second-difference inverse of [`height_from_asm`].
pub fn asm_from_height(h: &HeightMatrix) -> Result<SignMatrix> {
    let mut rows = Vec::with_capacity(h.r());
    for i in 1..=h.r() {
        let mut row = Vec::with_capacity(h.c());
        for j in 1..=h.c() {
            let diff = h.get(i, j) - h.get(i - 1, j) - h.get(i, j - 1) + h.get(i - 1, j - 1);
            if !matches!(diff, -2 | 0 | 2) {
                return Err(Error::CorruptHeight { i, j, diff });
            }
            row.push((-diff / 2) as i8);
        }
        rows.push(row);
    }
    SignMatrix::new(rows)
}

pub fn halved_from_height(h: &HeightMatrix) -> Result<HalvedAsm> {
    asm_from_height(h)?.try_into()
}

pub fn full_from_height(h: &HeightMatrix) -> Result<FullAsm> {
    asm_from_height(h)?.try_into()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BottomHeight {
    /// `c_i = n - 1`
    #[serde(rename = "n-1")]
    Low,
    /// `c_i = n + 1`
    #[serde(rename = "n+1")]
    High,
}

impl BottomHeight {
    pub fn value(self, n: usize) -> i64 {
        match self {
            BottomHeight::Low => n as i64 - 1,
            BottomHeight::High => n as i64 + 1,
        }
    }
}

impl std::str::FromStr for BottomHeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "n-1" | "low" | "L" => Ok(BottomHeight::Low),
            "n+1" | "high" | "H" => Ok(BottomHeight::High),
            other => Err(Error::Parse(format!("bottom height must be n-1 or n+1, got {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BottomConstraint {
    Free,
    Fixed(BottomHeight),
}

impl BottomConstraint {
    pub fn admits(self, h: BottomHeight) -> bool {
        match self {
            BottomConstraint::Free => true,
            BottomConstraint::Fixed(f) => f == h,
        }
    }
}

/// Constraint on each `c_i`, `i = 1..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BottomSpec {
    constraints: Vec<BottomConstraint>,
}

impl BottomSpec {
    pub fn free(n: usize) -> Self {
        Self { constraints: vec![BottomConstraint::Free; n] }
    }

    pub fn all(n: usize, h: BottomHeight) -> Self {
        Self { constraints: vec![BottomConstraint::Fixed(h); n] }
    }

    pub fn exact(hs: &[BottomHeight]) -> Self {
        Self { constraints: hs.iter().map(|&h| BottomConstraint::Fixed(h)).collect() }
    }

    pub fn from_constraints(constraints: Vec<BottomConstraint>) -> Self {
        Self { constraints }
    }

    pub fn n(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[BottomConstraint] {
        &self.constraints
    }

    pub fn admits(&self, hs: &[BottomHeight]) -> bool {
        hs.len() == self.constraints.len() && self.constraints.iter().zip(hs).all(|(c, &h)| c.admits(h))
    }

    /// Every fully fixed vector admitted by this spec, in lexicographic order
    /// with `Low < High`.
    pub fn expand(&self) -> Vec<Vec<BottomHeight>> {
        let mut out = vec![Vec::new()];
        for c in &self.constraints {
            let options: &[BottomHeight] = match c {
                BottomConstraint::Free => &[BottomHeight::Low, BottomHeight::High],
                BottomConstraint::Fixed(BottomHeight::Low) => &[BottomHeight::Low],
                BottomConstraint::Fixed(BottomHeight::High) => &[BottomHeight::High],
            };
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |&h| {
                        let mut v = prefix.clone();
                        v.push(h);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// Comma separated list of `*`, `n-1`, `n+1`.
impl std::str::FromStr for BottomSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let constraints = s
            .split(',')
            .map(|t| match t.trim() {
                "*" | "free" => Ok(BottomConstraint::Free),
                other => other.parse().map(BottomConstraint::Fixed),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { constraints })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightStats {
    pub n_minus: u32,
    pub n_minus_even: u32,
    pub n_minus_odd: u32,
    pub n_plus_odd: u32,
    pub n_plus_even: u32,
}

impl WeightStats {
    /// `2^{N_-}`
    pub fn minus_weight(&self) -> BigInt {
        ipow(2, self.n_minus)
    }

    /// `2^{N_-even + N_+odd}`
    pub fn parity_weight(&self) -> BigInt {
        ipow(2, self.n_minus_even + self.n_plus_odd)
    }

    /// The mirrored statistic `2^{N_-odd + N_+even}`.
    pub fn mirror_parity_weight(&self) -> BigInt {
        ipow(2, self.n_minus_odd + self.n_plus_even)
    }
}

pub fn weight_stats<A: AsmLike + ?Sized>(a: &A) -> WeightStats {
    let m = a.matrix();
    let mut s = WeightStats::default();
    for i in 1..=m.n_rows() {
        for j in 1..=m.n_cols() {
            let even = (i + j) % 2 == 0;
            match (m.get(i, j), even) {
                (-1, true) => s.n_minus_even += 1,
                (-1, false) => s.n_minus_odd += 1,
                (1, true) => s.n_plus_even += 1,
                (1, false) => s.n_plus_odd += 1,
                _ => {}
            }
        }
    }
    s.n_minus = s.n_minus_even + s.n_minus_odd;
    s
}

/// Row-by-row backtracking over height matrices with fixed first row, fixed
/// left/right columns, and a predicate on the last row.
struct HeightSearch<'a> {
    width: usize,
    left: Vec<i64>,
    right: Vec<i64>,
    last_ok: &'a (dyn Fn(&[i64]) -> bool + Sync),
}

impl HeightSearch<'_> {
    fn rows(&self) -> usize {
        self.left.len()
    }

    /// All rows compatible with `prev` at row index `i`, in lexicographic order.
    fn next_rows(&self, prev: &[i64], i: usize) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut row = vec![0i64; self.width];
        row[0] = self.left[i];
        if (row[0] - prev[0]).abs() != 1 {
            return out;
        }
        self.fill(prev, i, 1, &mut row, &mut out);
        out
    }

    fn fill(&self, prev: &[i64], i: usize, j: usize, row: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let last = self.width - 1;
        if j == last {
            let v = self.right[i];
            if (v - row[j - 1]).abs() == 1 && (v - prev[j]).abs() == 1 {
                row[j] = v;
                out.push(row.clone());
            }
            return;
        }
        for v in [prev[j] - 1, prev[j] + 1] {
            if (v - row[j - 1]).abs() != 1 {
                continue;
            }
            if (self.right[i] - v).abs() > (last - j) as i64 {
                continue;
            }
            row[j] = v;
            self.fill(prev, i, j + 1, row, out);
        }
    }

    fn dfs(&self, rows: &mut Vec<Vec<i64>>, visit: &mut dyn FnMut(&[Vec<i64>])) {
        let i = rows.len();
        if i == self.rows() {
            if (self.last_ok)(rows.last().unwrap()) {
                visit(rows);
            }
            return;
        }
        for r in self.next_rows(rows.last().unwrap(), i) {
            rows.push(r);
            self.dfs(rows, visit);
            rows.pop();
        }
    }

    /// Collects results of `f` over every matrix, splitting on the first
    /// free row for parallelism. The order is the sequential order.
    fn collect<T: Send>(&self, exec: Execution, top: Vec<i64>, f: &(dyn Fn(&[Vec<i64>]) -> T + Sync)) -> Vec<T> {
        if self.rows() == 1 {
            return if (self.last_ok)(&top) { vec![f(&[top])] } else { vec![] };
        }
        let firsts = self.next_rows(&top, 1);
        let chunks = par::map_with(exec, firsts, |first| {
            let mut rows = vec![top.clone(), first];
            let mut acc = Vec::new();
            self.dfs(&mut rows, &mut |m| acc.push(f(m)));
            acc
        });
        chunks.into_iter().flatten().collect()
    }
}

fn halved_search<'a>(n: usize, last_ok: &'a (dyn Fn(&[i64]) -> bool + Sync)) -> (HeightSearch<'a>, Vec<i64>) {
    let width = 2 * n + 1;
    let search = HeightSearch {
        width,
        left: (0..=n as i64).collect(),
        right: (0..=n as i64).map(|i| 2 * n as i64 - i).collect(),
        last_ok,
    };
    (search, (0..width as i64).collect())
}

fn bottom_row_ok(n: usize, bottom: &BottomSpec, row: &[i64]) -> bool {
    let n_ = n as i64;
    if row.iter().step_by(2).any(|&v| v != n_) {
        return false;
    }
    row.iter().skip(1).step_by(2).zip(bottom.constraints()).all(|(&v, c)| match c {
        BottomConstraint::Free => true,
        BottomConstraint::Fixed(h) => v == h.value(n),
    })
}

fn to_height(rows: &[Vec<i64>]) -> HeightMatrix {
    HeightMatrix { h: rows.to_vec() }
}

/// Maps `f` over the halved ASMs of order `2n` with boundary form and
/// bottom constraint `bottom`, in lexicographic order of height rows.
pub fn map_halved_asms<T: Send>(n: usize, bottom: &BottomSpec, f: impl Fn(&HalvedAsm) -> T + Sync) -> Vec<T> {
    map_halved_asms_with(Execution::default(), n, bottom, f)
}

pub fn map_halved_asms_with<T: Send>(
    exec: Execution,
    n: usize,
    bottom: &BottomSpec,
    f: impl Fn(&HalvedAsm) -> T + Sync,
) -> Vec<T> {
    assert!(n >= 1, "order parameter must be positive");
    assert_eq!(bottom.n(), n, "bottom spec length must equal n");
    let pred = |row: &[i64]| bottom_row_ok(n, bottom, row);
    let (search, top) = halved_search(n, &pred);
    search.collect(exec, top, &|rows| {
        let a = halved_from_height(&to_height(rows)).expect("height search yields valid halved ASMs");
        f(&a)
    })
}

pub fn enumerate_halved_asms(n: usize, bottom: &BottomSpec) -> Vec<HalvedAsm> {
    map_halved_asms(n, bottom, HalvedAsm::clone)
}

/// Sequential streaming variant; stops early when `visit` returns false.
pub fn visit_halved_asms(n: usize, bottom: &BottomSpec, mut visit: impl FnMut(&HalvedAsm) -> bool) {
    let pred = |row: &[i64]| bottom_row_ok(n, bottom, row);
    let (search, top) = halved_search(n, &pred);
    let mut stop = false;
    search.dfs(&mut vec![top], &mut |rows| {
        if !stop {
            let a = halved_from_height(&to_height(rows)).expect("height search yields valid halved ASMs");
            stop = !visit(&a);
        }
    });
}

pub fn map_full_asms<T: Send>(k: usize, f: impl Fn(&FullAsm) -> T + Sync) -> Vec<T> {
    assert!(k >= 1, "order must be positive");
    let k_ = k as i64;
    let last: Vec<i64> = (0..=k_).rev().collect();
    let pred = move |row: &[i64]| row == last.as_slice();
    let search = HeightSearch {
        width: k + 1,
        left: (0..=k_).collect(),
        right: (0..=k_).map(|i| k_ - i).collect(),
        last_ok: &pred,
    };
    search.collect(Execution::default(), (0..=k_).collect(), &|rows| {
        let a = full_from_height(&to_height(rows)).expect("height search yields valid ASMs");
        f(&a)
    })
}

pub fn enumerate_full_asms(k: usize) -> Vec<FullAsm> {
    map_full_asms(k, FullAsm::clone)
}

/// `sum_A 2^{N_-(A)}` over halved ASMs admitted by `bottom`.
pub fn minus_weighted_sum(n: usize, bottom: &BottomSpec) -> BigInt {
    map_halved_asms(n, bottom, |a| weight_stats(a).minus_weight()).into_iter().sum()
}

/// `sum_A 2^{N_-even(A) + N_+odd(A)}` over halved ASMs admitted by `bottom`.
pub fn parity_weighted_sum(n: usize, bottom: &BottomSpec) -> BigInt {
    map_halved_asms(n, bottom, |a| weight_stats(a).parity_weight()).into_iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::int;

    pub(crate) fn sample_asm() -> FullAsm {
        FullAsm::from_rows(vec![
            vec![0, 0, 1, 0, 0, 0],
            vec![1, 0, -1, 0, 1, 0],
            vec![0, 0, 1, 0, -1, 1],
            vec![0, 1, -1, 1, 0, 0],
            vec![0, 0, 0, 0, 1, 0],
            vec![0, 0, 1, 0, 0, 0],
        ])
        .unwrap()
    }

    fn sample_heights() -> Vec<Vec<i64>> {
        vec![
            vec![0, 1, 2, 3, 4, 5, 6],
            vec![1, 2, 3, 2, 3, 4, 5],
            vec![2, 1, 2, 3, 4, 3, 4],
            vec![3, 2, 3, 2, 3, 4, 3],
            vec![4, 3, 2, 3, 2, 3, 2],
            vec![5, 4, 3, 4, 3, 2, 1],
            vec![6, 5, 4, 3, 2, 1, 0],
        ]
    }

    fn fig_halved() -> HalvedAsm {
        HalvedAsm::from_rows(vec![
            vec![0, 0, 1, 0, 0, 0],
            vec![1, 0, -1, 0, 1, 0],
            vec![0, 0, 1, 0, -1, 1],
        ])
        .unwrap()
    }

    #[test]
    fn displayed_height_matrix() {
        let h = height_from_asm(&sample_asm());
        assert_eq!(h.rows(), sample_heights().as_slice());
        let back = full_from_height(&HeightMatrix::new(sample_heights()).unwrap()).unwrap();
        assert_eq!(back, sample_asm());
    }

    #[test]
    fn small_halved_heights() {
        let a = HalvedAsm::from_rows(vec![vec![1, 0]]).unwrap();
        assert_eq!(height_from_asm(&a).rows(), &[vec![0, 1, 2], vec![1, 0, 1]]);
        let b = HalvedAsm::from_rows(vec![vec![0, 1]]).unwrap();
        assert_eq!(height_from_asm(&b).rows(), &[vec![0, 1, 2], vec![1, 2, 1]]);
        let h = HeightMatrix::new(vec![vec![0, 1, 2], vec![1, 2, 1]]).unwrap();
        assert_eq!(halved_from_height(&h).unwrap(), b);
    }

    #[test]
    fn corrupt_heights_are_reported() {
        // built without validation so the second difference sees a jump
        let h = HeightMatrix { h: vec![vec![0, 1], vec![3, 0]] };
        assert!(matches!(asm_from_height(&h), Err(Error::CorruptHeight { i: 1, j: 1, diff: -4 })));
        assert!(HeightMatrix::new(vec![vec![0, 1], vec![3, 0]]).is_err());
    }

    #[test]
    fn validation_reports() {
        assert!(validate_full(sample_asm().matrix()).is_ok());
        let zero = SignMatrix::new(vec![vec![0, 0]]).unwrap();
        assert_eq!(validate_halved(&zero).unwrap_err().kind, ViolationKind::RowSum);
        let neg_top = SignMatrix::new(vec![vec![1, -1, 1, 0], vec![0, 1, 0, 0]]).unwrap();
        let v = validate_halved(&neg_top).unwrap_err();
        assert_eq!(v.kind, ViolationKind::TopmostNotOne);
        assert_eq!((v.row, v.col), (Some(1), Some(2)));
        let bad_row = SignMatrix::new(vec![vec![1, 1, -1, 0]]).unwrap();
        assert!(validate_halved(&bad_row).is_err());
        let col_sum = SignMatrix::new(vec![vec![0, 1, 0], vec![1, -1, 1], vec![0, 0, 1]]).unwrap();
        let v = validate_full(&col_sum).unwrap_err();
        assert_eq!((v.kind, v.col), (ViolationKind::ColumnSum, Some(2)));
        assert!(SignMatrix::new(vec![vec![2]]).is_err());
    }

    #[test]
    fn fig_stats() {
        let s = weight_stats(&fig_halved());
        assert_eq!(s.n_minus, 2);
        assert_eq!(s.n_minus_even, 1);
        assert_eq!(s.n_plus_odd, 3);
        assert_eq!(s.parity_weight(), int(16));
        // independent recount straight from the rows
        let a = fig_halved();
        let mut count = 0;
        for i in 1..=3usize {
            for j in 1..=6usize {
                if ((a.get(i, j) == -1) && (i + j) % 2 == 0) || ((a.get(i, j) == 1) && (i + j) % 2 == 1) {
                    count += 1;
                }
            }
        }
        assert_eq!(count, 4);
        assert_eq!(
            a.bottom_heights().unwrap(),
            vec![BottomHeight::Low, BottomHeight::Low, BottomHeight::High]
        );
        // the lone 1 sits at the even position (1,1)
        let id = HalvedAsm::from_rows(vec![vec![1, 0]]).unwrap();
        assert_eq!(weight_stats(&id), WeightStats { n_plus_even: 1, ..WeightStats::default() });
        assert_eq!(weight_stats(&id).parity_weight(), int(1));
    }

    #[test]
    fn enumerate_order_two() {
        let all = enumerate_halved_asms(1, &BottomSpec::free(1));
        let rows: Vec<_> = all.iter().map(|a| a.matrix().rows().to_vec()).collect();
        assert_eq!(rows.len(), 2);
        assert!(rows.contains(&vec![vec![1, 0]]) && rows.contains(&vec![vec![0, 1]]));
        let high = enumerate_halved_asms(1, &BottomSpec::all(1, BottomHeight::High));
        assert_eq!(high, vec![HalvedAsm::from_rows(vec![vec![0, 1]]).unwrap()]);
    }

    #[test]
    fn small_weighted_sums() {
        assert_eq!(minus_weighted_sum(1, &BottomSpec::free(1)), int(2));
        assert_eq!(minus_weighted_sum(2, &BottomSpec::free(2)), int(16));
        assert_eq!(parity_weighted_sum(2, &BottomSpec::free(2)), int(45));
    }

    #[test]
    fn round_trip_and_bottom_form() {
        for n in 1..=3 {
            let all = enumerate_halved_asms(n, &BottomSpec::free(n));
            let mut sorted = all.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), all.len(), "duplicates at n={n}");
            for a in &all {
                let h = height_from_asm(a);
                assert_eq!(&halved_from_height(&h).unwrap(), a);
                let last = &h.rows()[n];
                for (j, &v) in last.iter().enumerate() {
                    if j % 2 == 0 {
                        assert_eq!(v, n as i64);
                    } else {
                        assert!(v == n as i64 - 1 || v == n as i64 + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn lexicographic_stream() {
        let hs: Vec<_> = map_halved_asms(3, &BottomSpec::free(3), height_from_asm);
        assert!(hs.windows(2).all(|w| w[0] < w[1]));
        let mut seq = Vec::new();
        visit_halved_asms(3, &BottomSpec::free(3), |a| {
            seq.push(height_from_asm(a));
            true
        });
        assert_eq!(seq, hs);
    }

    #[test]
    fn fixed_bottoms_partition_the_free_set() {
        for n in 1..=3 {
            let free = enumerate_halved_asms(n, &BottomSpec::free(n)).len();
            let parts: usize = BottomSpec::free(n)
                .expand()
                .iter()
                .map(|c| enumerate_halved_asms(n, &BottomSpec::exact(c)).len())
                .sum();
            assert_eq!(free, parts);
        }
    }

    #[test]
    fn reflection_swaps_parity_stats() {
        for n in 1..=3 {
            let all = enumerate_halved_asms(n, &BottomSpec::free(n));
            let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
            for a in &all {
                let r = a.reflect();
                assert!(set.contains(&r));
                let (s, t) = (weight_stats(a), weight_stats(&r));
                assert_eq!(s.n_minus_even, t.n_minus_odd);
                assert_eq!(s.n_plus_odd, t.n_plus_even);
            }
        }
    }

    #[test]
    fn full_asm_counts() {
        let counts: Vec<usize> = (1..=5).map(|k| enumerate_full_asms(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 42, 429]);
    }

    #[test]
    fn spec_parsing() {
        let s: BottomSpec = "*,n-1,n+1".parse().unwrap();
        assert_eq!(
            s.constraints(),
            &[
                BottomConstraint::Free,
                BottomConstraint::Fixed(BottomHeight::Low),
                BottomConstraint::Fixed(BottomHeight::High)
            ]
        );
        assert_eq!(s.expand().len(), 2);
        assert!("n".parse::<BottomSpec>().is_err());
    }

    #[test]
    fn json_forms() {
        let a = fig_halved();
        let js = serde_json::to_string(&a).unwrap();
        assert_eq!(js, "[[0,0,1,0,0,0],[1,0,-1,0,1,0],[0,0,1,0,-1,1]]");
        let back: HalvedAsm = serde_json::from_str(&js).unwrap();
        assert_eq!(back, a);
        assert!(serde_json::from_str::<HalvedAsm>("[[0,0]]").is_err());
        let s = serde_json::to_value(weight_stats(&a)).unwrap();
        assert_eq!(s["n_minus_even"], 1);
    }
}
