//! Integer partitions and their Young diagrams.
//!
//! Cells are addressed 1-based, `(row, col)`, so hook lengths read
//! `λ_i + λ'_j - i - j + 1` without index shifting.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A partition of `n`: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
    n: usize,
}

/// A cell of a Young diagram, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }

    /// Content `col - row`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

pub(crate) fn choose2(m: usize) -> u64 {
    let m = m as u64;
    m * m.saturating_sub(1) / 2
}

impl Partition {
    /// Validates and wraps `parts`. Non-monotone input is rejected rather than sorted.
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?}: parts must be positive"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?}: parts must be weakly decreasing"
            )));
        }
        let n = parts.iter().sum();
        Ok(Partition { parts, n })
    }

    /// The one-row shape `(n)`.
    pub fn row(n: usize) -> Result<Self> {
        Self::new(vec![n])
    }

    /// The one-column shape `(1^n)`.
    pub fn column(n: usize) -> Result<Self> {
        Self::new(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Length of row `i` (1-based); zero past the last row.
    pub fn row_len(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// `λ'_i = #{ j : λ_j >= i }`.
    pub fn conjugate(&self) -> Partition {
        let width = self.parts[0];
        let parts = (1..=width)
            .map(|i| self.parts.iter().take_while(|&&p| p >= i).count())
            .collect();
        Partition { parts, n: self.n }
    }

    /// Whether `self` dominates `other`: every prefix sum of `self` is at
    /// least the matching prefix sum of `other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::SizeMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let rows = self.len().max(other.len());
        let (mut a, mut b) = (0usize, 0usize);
        for i in 1..=rows {
            a += self.row_len(i);
            b += other.row_len(i);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn contains(&self, cell: Cell) -> bool {
        cell.row >= 1 && cell.col >= 1 && cell.col <= self.row_len(cell.row)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (1..=len).map(move |j| Cell::new(i + 1, j)))
    }

    pub fn hook_length(&self, cell: Cell) -> Result<usize> {
        if !self.contains(cell) {
            return Err(Error::CellOutOfShape {
                row: cell.row,
                col: cell.col,
            });
        }
        let col_len = self.parts.iter().take_while(|&&p| p >= cell.col).count();
        Ok(self.row_len(cell.row) + col_len + 1 - cell.row - cell.col)
    }

    /// Hook lengths of all cells, row-major.
    pub fn hook_lengths(&self) -> Vec<usize> {
        let conj = self.conjugate();
        self.cells()
            .map(|c| self.row_len(c.row) + conj.row_len(c.col) + 1 - c.row - c.col)
            .collect()
    }

    /// `Σ (j - i)` over the cells.
    pub fn content_sum(&self) -> i64 {
        self.cells().map(|c| c.content()).sum()
    }

    /// `Σ (j - i)^2` over the cells.
    pub fn squared_content_sum(&self) -> i64 {
        self.cells().map(|c| c.content() * c.content()).sum()
    }

    /// `Σ_i C(λ_i, 2)`.
    pub fn row_pair_sum(&self) -> u64 {
        self.parts.iter().map(|&p| choose2(p)).sum()
    }

    /// `Σ_j C(λ'_j, 2)`, which also equals `Σ_i (i-1) λ_i`.
    pub fn column_pair_sum(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| (i * p) as u64)
            .sum()
    }

    /// First row length.
    pub fn first_row(&self) -> usize {
        self.parts[0]
    }

    /// All partitions of `n`, in reverse lexicographic order starting from `(n)`.
    pub fn all(n: usize) -> Vec<Partition> {
        fn walk(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                let n = prefix.iter().sum();
                out.push(Partition {
                    parts: prefix.clone(),
                    n,
                });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                walk(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n > 0 {
            walk(n, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `"4,4,2,1"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<usize>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {tok:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}
