//! Standard Young tableaux, descent sets, and the statistics built on them.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{parse_rational, to_f64, Rational, Scalar};

/// Default upper bound on `f^λ` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A standard Young tableau. Construction validates; values are immutable.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauJson", into = "TableauJson")]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
    // row_of[m] is the 0-based row holding entry m; slot 0 unused.
    row_of: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct TableauJson {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<TableauJson> for StandardTableau {
    type Error = Error;

    fn try_from(raw: TableauJson) -> Result<Self> {
        StandardTableau::new(raw.shape, raw.rows)
    }
}

impl From<StandardTableau> for TableauJson {
    fn from(t: StandardTableau) -> Self {
        TableauJson {
            shape: t.shape,
            rows: t.rows,
        }
    }
}

impl StandardTableau {
    /// Builds a tableau, checking that `rows` has shape `shape`.
    pub fn new(shape: Partition, rows: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self::from_rows(rows)?;
        if t.shape != shape {
            return Err(Error::InvalidTableau(format!(
                "rows have shape {} but shape {} was declared",
                t.shape, shape
            )));
        }
        Ok(t)
    }

    /// Builds a tableau from its rows, inferring the shape.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = Partition::new(rows.iter().map(Vec::len).collect())
            .map_err(|e| Error::InvalidTableau(format!("row lengths: {e}")))?;
        let n = shape.n();
        let mut row_of = vec![usize::MAX; n + 1];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(Error::InvalidTableau(format!("entry {v} outside 1..={n}")));
                }
                if row_of[v] != usize::MAX {
                    return Err(Error::InvalidTableau(format!("entry {v} repeated")));
                }
                row_of[v] = r;
                if c > 0 && row[c - 1] >= v {
                    return Err(Error::InvalidTableau(format!(
                        "row {} not increasing at column {}",
                        r + 1,
                        c + 1
                    )));
                }
                if r > 0 && rows[r - 1][c] >= v {
                    return Err(Error::InvalidTableau(format!(
                        "column {} not increasing at row {}",
                        c + 1,
                        r + 1
                    )));
                }
            }
        }
        Ok(StandardTableau { shape, rows, row_of })
    }

    /// Builds from the row (0-based) of each entry `1..=n`, filling rows
    /// left to right. The caller guarantees a lattice word.
    pub(crate) fn from_row_sequence(shape: &Partition, seq: &[usize]) -> Self {
        let mut rows: Vec<Vec<usize>> = shape.parts().iter().map(|&p| Vec::with_capacity(p)).collect();
        let mut row_of = Vec::with_capacity(seq.len() + 1);
        row_of.push(usize::MAX);
        for (m, &r) in seq.iter().enumerate() {
            rows[r].push(m + 1);
            row_of.push(r);
        }
        debug_assert!(rows.iter().zip(shape.parts()).all(|(r, &p)| r.len() == p));
        StandardTableau {
            shape: shape.clone(),
            rows,
            row_of,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn n(&self) -> usize {
        self.shape.n()
    }

    /// 1-based row of entry `m`.
    pub fn row_of(&self, m: usize) -> Option<usize> {
        self.row_of.get(m).filter(|&&r| r != usize::MAX).map(|r| r + 1)
    }

    /// `i` is a descent iff `i + 1` sits in a strictly lower row.
    pub fn is_descent(&self, i: usize) -> bool {
        i >= 1 && i < self.n() && self.row_of[i + 1] > self.row_of[i]
    }

    pub fn descent_set(&self) -> DescentSet {
        let n = self.n();
        let mut bits = vec![false; n];
        for (i, bit) in bits.iter_mut().enumerate().take(n).skip(1) {
            *bit = self.row_of[i + 1] > self.row_of[i];
        }
        DescentSet { n, bits }
    }

    pub fn des(&self) -> usize {
        (1..self.n()).filter(|&i| self.is_descent(i)).count()
    }

    pub fn maj(&self) -> usize {
        (1..self.n()).filter(|&i| self.is_descent(i)).sum()
    }

    /// `d_f(T) = Σ_{i ∈ D(T)} f(i)` in the requested arithmetic.
    pub fn descent_statistic(&self, f: &DescentFunction, mode: Arithmetic) -> Result<Scalar> {
        match mode {
            Arithmetic::Exact => self.descent_statistic_exact(f).map(Scalar::Exact),
            Arithmetic::Float => self.descent_statistic_f64(f).map(Scalar::Float),
        }
    }

    pub fn descent_statistic_exact(&self, f: &DescentFunction) -> Result<Rational> {
        f.check_domain(self.n())?;
        match f {
            DescentFunction::Des => Ok(Rational::from_integer(self.des().into())),
            DescentFunction::Maj => Ok(Rational::from_integer(self.maj().into())),
            _ => {
                let mut acc = Rational::zero();
                for i in (1..self.n()).filter(|&i| self.is_descent(i)) {
                    acc += f.value_exact(i)?;
                }
                Ok(acc)
            }
        }
    }

    pub fn descent_statistic_f64(&self, f: &DescentFunction) -> Result<f64> {
        f.check_domain(self.n())?;
        let mut acc = 0.0;
        for i in (1..self.n()).filter(|&i| self.is_descent(i)) {
            acc += f.value_f64(i)?;
        }
        Ok(acc)
    }

    /// The conjugate tableau (reflected across the main diagonal).
    pub fn transpose(&self) -> StandardTableau {
        let conj = self.shape.conjugate();
        let rows = (0..conj.len())
            .map(|c| {
                self.rows
                    .iter()
                    .take_while(|row| row.len() > c)
                    .map(|row| row[c])
                    .collect()
            })
            .collect();
        StandardTableau::new(conj, rows).expect("transpose of a standard tableau is standard")
    }

    /// Text form: one row per line, entries separated by spaces.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.rows.iter().enumerate() {
            if r > 0 {
                writeln!(f)?;
            }
            for (c, v) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "SYT[{}]", rows.join(" / "))
    }
}

impl FromStr for StandardTableau {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|_| Error::InvalidTableau(format!("bad entry {tok:?}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        StandardTableau::from_rows(rows)
    }
}

/// Descent set `D(T) ⊆ {1, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DescentSet {
    n: usize,
    // bits[i] for 1 <= i < n; bits[0] always false.
    bits: Vec<bool>,
}

impl DescentSet {
    pub fn contains(&self, i: usize) -> bool {
        self.bits.get(i).copied().unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| i)
    }

    pub fn len(&self) -> usize {
        self.iter().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl fmt::Debug for DescentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for DescentSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// Arithmetic used for a descent statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arithmetic {
    Exact,
    Float,
}

/// The weight function `f` defining `d_f(T) = Σ_{i ∈ D(T)} f(i)`.
#[derive(Clone, Debug, PartialEq)]
pub enum DescentFunction {
    /// `f ≡ 1`
    Des,
    /// `f(i) = i`
    Maj,
    /// `f(i) = i^α`, `α > 0`
    Power(f64),
    /// Explicit values `f(1), f(2), …`
    Table(Vec<Rational>),
}

impl DescentFunction {
    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidDescentFunction(format!(
                "power exponent must be positive and finite, got {alpha}"
            )));
        }
        Ok(DescentFunction::Power(alpha))
    }

    pub fn table(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidDescentFunction("empty table".into()));
        }
        Ok(DescentFunction::Table(values))
    }

    /// Parses whitespace- or comma-separated rationals, one value per position.
    /// Lines starting with `#` are comments.
    pub fn parse_table(text: &str) -> Result<Self> {
        let values = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
            .filter(|tok| !tok.is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Self::table(values)
    }

    fn integral_power(alpha: f64) -> Option<u32> {
        (alpha.fract() == 0.0 && alpha <= u32::MAX as f64).then_some(alpha as u32)
    }

    /// Whether every value is an exact rational.
    pub fn is_rational(&self) -> bool {
        match self {
            DescentFunction::Power(a) => Self::integral_power(*a).is_some(),
            _ => true,
        }
    }

    /// Arithmetic used by default: exact where possible.
    pub fn natural_arithmetic(&self) -> Arithmetic {
        if self.is_rational() {
            Arithmetic::Exact
        } else {
            Arithmetic::Float
        }
    }

    /// Errors unless `f` is defined on `1..n`.
    pub fn check_domain(&self, n: usize) -> Result<()> {
        if let DescentFunction::Table(v) = self {
            if v.len() + 1 < n {
                return Err(Error::InvalidDescentFunction(format!(
                    "table has {} values but positions 1..{} are needed",
                    v.len(),
                    n.saturating_sub(1)
                )));
            }
        }
        Ok(())
    }

    pub fn value_exact(&self, i: usize) -> Result<Rational> {
        match self {
            DescentFunction::Des => Ok(Rational::one()),
            DescentFunction::Maj => Ok(Rational::from_integer(i.into())),
            DescentFunction::Power(a) => match Self::integral_power(*a) {
                Some(k) => Ok(Rational::from_integer(num_traits::pow(
                    BigInt::from(i),
                    k as usize,
                ))),
                None => Err(Error::NonRationalFunction),
            },
            DescentFunction::Table(v) => v
                .get(i.wrapping_sub(1))
                .cloned()
                .ok_or_else(|| Error::IndexRange(format!("table has no value at position {i}"))),
        }
    }

    pub fn value_f64(&self, i: usize) -> Result<f64> {
        match self {
            DescentFunction::Des => Ok(1.0),
            DescentFunction::Maj => Ok(i as f64),
            DescentFunction::Power(a) => Ok((i as f64).powf(*a)),
            DescentFunction::Table(v) => v
                .get(i.wrapping_sub(1))
                .map(to_f64)
                .ok_or_else(|| Error::IndexRange(format!("table has no value at position {i}"))),
        }
    }

    pub fn value(&self, i: usize, mode: Arithmetic) -> Result<Scalar> {
        match mode {
            Arithmetic::Exact => self.value_exact(i).map(Scalar::Exact),
            Arithmetic::Float => self.value_f64(i).map(Scalar::Float),
        }
    }

    /// Short label: `des`, `maj`, `power:1.5`, `table[k]`.
    pub fn label(&self) -> String {
        match self {
            DescentFunction::Des => "des".into(),
            DescentFunction::Maj => "maj".into(),
            DescentFunction::Power(a) => format!("power:{a}"),
            DescentFunction::Table(v) => format!("table[{}]", v.len()),
        }
    }

    /// A growth witness for the built-in kinds; tables have none.
    pub fn default_growth_witness(&self) -> Option<GrowthWitness> {
        match self {
            DescentFunction::Des => Some(GrowthWitness::new(0.5, 2.0, 0.0).ok()?),
            DescentFunction::Maj => Some(GrowthWitness::new(0.5, 2.0, 1.0).ok()?),
            DescentFunction::Power(a) => Some(GrowthWitness::new(0.5, 2.0, *a).ok()?),
            DescentFunction::Table(_) => None,
        }
    }
}

impl FromStr for DescentFunction {
    type Err = Error;

    /// `des`, `maj`, or `power:<alpha>`. Tables come from [`DescentFunction::parse_table`].
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "des" => Ok(DescentFunction::Des),
            "maj" => Ok(DescentFunction::Maj),
            other => match other.strip_prefix("power:") {
                Some(a) => {
                    let alpha: f64 = a.parse().map_err(|_| {
                        Error::InvalidDescentFunction(format!("bad exponent {a:?}"))
                    })?;
                    DescentFunction::power(alpha)
                }
                None => Err(Error::InvalidDescentFunction(format!(
                    "unknown statistic {other:?}"
                ))),
            },
        }
    }
}

/// Bounds `c1 <= f(m) / m^α <= c2`, asserting strictly polynomial growth of `f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthWitness {
    pub c1: f64,
    pub c2: f64,
    pub alpha: f64,
}

impl GrowthWitness {
    /// `α = 0` is accepted so that `des` (`f ≡ 1`) has a witness.
    pub fn new(c1: f64, c2: f64, alpha: f64) -> Result<Self> {
        if !(c1 > 0.0 && c1 < c2 && c2.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "growth witness needs 0 < c1 < c2, got c1={c1}, c2={c2}"
            )));
        }
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "growth exponent must be finite and non-negative, got {alpha}"
            )));
        }
        Ok(GrowthWitness { c1, c2, alpha })
    }

    /// Checks the bounds at every `m` in `range`.
    pub fn holds_on(&self, f: &DescentFunction, range: std::ops::RangeInclusive<usize>) -> bool {
        range.into_iter().all(|m| match f.value_f64(m) {
            Ok(v) => {
                let r = v / (m as f64).powf(self.alpha);
                r >= self.c1 && r <= self.c2
            }
            Err(_) => false,
        })
    }
}

/// `f^λ = n! / Π h_ij`.
pub fn count_syt(shape: &Partition) -> Result<BigUint> {
    let mut numer = BigUint::one();
    for k in 2..=shape.n() {
        numer *= k;
    }
    let denom: BigUint = shape
        .hook_lengths()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * h);
    let (q, r) = numer.div_rem(&denom);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "hook product does not divide n! for shape {shape}"
        )));
    }
    Ok(q)
}

fn check_cap(shape: &Partition, cap: u64) -> Result<()> {
    let count = count_syt(shape)?;
    if count > BigUint::from(cap) {
        return Err(Error::EnumerationCap {
            count: count.to_string(),
            cap,
        });
    }
    Ok(())
}

/// Streams every standard tableau of `shape` once, after checking `f^λ <= cap`.
pub fn enumerate_syt(shape: &Partition, cap: u64) -> Result<SytIter> {
    check_cap(shape, cap)?;
    Ok(SytIter::new(shape))
}

/// Splits the enumeration of `shape` by the placement of entries `1..=depth`.
/// Concatenating the returned streams in order reproduces [`enumerate_syt`].
pub fn enumerate_syt_split(shape: &Partition, depth: usize, cap: u64) -> Result<Vec<SytIter>> {
    check_cap(shape, cap)?;
    let depth = depth.min(shape.n());
    let mut prefixes = Vec::new();
    let mut walker = SytIter::new(shape);
    walker.collect_prefixes(depth, &mut prefixes);
    Ok(prefixes
        .into_iter()
        .map(|p| SytIter::with_prefix(shape, p))
        .collect())
}

/// Backtracking enumerator. Inserts `1..=n` in order; candidate cells are
/// scanned row-major (one addable cell per row at most).
#[derive(Clone, Debug)]
pub struct SytIter {
    shape: Partition,
    filled: Vec<usize>,
    // row chosen for each placed entry
    stack: Vec<usize>,
    base: usize,
    started: bool,
    done: bool,
}

impl SytIter {
    fn new(shape: &Partition) -> Self {
        SytIter {
            shape: shape.clone(),
            filled: vec![0; shape.len()],
            stack: Vec::with_capacity(shape.n()),
            base: 0,
            started: false,
            done: false,
        }
    }

    fn with_prefix(shape: &Partition, prefix: Vec<usize>) -> Self {
        let mut it = Self::new(shape);
        for r in prefix {
            it.push(r);
        }
        it.base = it.stack.len();
        it
    }

    fn addable(&self, r: usize) -> bool {
        self.filled[r] < self.shape.parts()[r] && (r == 0 || self.filled[r - 1] > self.filled[r])
    }

    fn push(&mut self, r: usize) {
        self.filled[r] += 1;
        self.stack.push(r);
    }

    fn pop(&mut self) -> Option<usize> {
        if self.stack.len() <= self.base {
            return None;
        }
        let r = self.stack.pop()?;
        self.filled[r] -= 1;
        Some(r)
    }

    fn collect_prefixes(&mut self, depth: usize, out: &mut Vec<Vec<usize>>) {
        if self.stack.len() == depth {
            out.push(self.stack.clone());
            return;
        }
        for r in 0..self.filled.len() {
            if self.addable(r) {
                self.push(r);
                self.collect_prefixes(depth, out);
                self.pop();
            }
        }
    }
}

impl Iterator for SytIter {
    type Item = StandardTableau;

    fn next(&mut self) -> Option<StandardTableau> {
        if self.done {
            return None;
        }
        let n = self.shape.n();
        let mut start = 0;
        if self.started {
            match self.pop() {
                Some(r) => start = r + 1,
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
        self.started = true;
        loop {
            if self.stack.len() == n {
                return Some(StandardTableau::from_row_sequence(&self.shape, &self.stack));
            }
            match (start..self.filled.len()).find(|&r| self.addable(r)) {
                Some(r) => {
                    self.push(r);
                    start = 0;
                }
                None => match self.pop() {
                    Some(r) => start = r + 1,
                    None => {
                        self.done = true;
                        return None;
                    }
                },
            }
        }
    }
}

/// `count_syt` as a `u64`, for callers that already know it is small.
pub fn count_syt_u64(shape: &Partition) -> Result<u64> {
    count_syt(shape)?
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("f^λ for {shape} exceeds u64")))
}
