use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::poly::{IntPolynomial, TwoVarPolynomial};

/// Nonnegative integers indexed by `(i, j)`: cohomological degree and
/// polynomial degree. Only nonzero cells are stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BigradedTable {
    cells: BTreeMap<(usize, usize), u64>,
}

impl BigradedTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_cells<I: IntoIterator<Item = ((usize, usize), u64)>>(cells: I) -> Self {
        let mut t = Self::new();
        for ((i, j), v) in cells {
            t.add(i, j, v);
        }
        t
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.cells.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, i: usize, j: usize, v: u64) {
        if v > 0 {
            *self.cells.entry((i, j)).or_insert(0) += v;
        }
    }

    /// Nonzero cells in increasing `(i, j)` order.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), u64)> + '_ {
        self.cells.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.cells.values().sum()
    }

    /// Sum of the cells in cohomological degree `i`.
    pub fn column_total(&self, i: usize) -> u64 {
        self.cells.range((i, 0)..=(i, usize::MAX)).map(|(_, &v)| v).sum()
    }

    /// Nonzero cells with `i + j != d`.
    pub fn off_diagonal(&self, d: usize) -> Vec<((usize, usize), u64)> {
        self.cells().filter(|&((i, j), _)| i + j != d).collect()
    }

    /// Moves every cell from `(i, j)` to `(i + di, j + dj)`.
    pub fn shifted(&self, di: usize, dj: usize) -> Self {
        Self::from_cells(self.cells().map(|((i, j), v)| ((i + di, j + dj), v)))
    }

    /// Cellwise sum.
    pub fn sum(&self, other: &Self) -> Self {
        Self::from_cells(self.cells().chain(other.cells()))
    }

    /// Graded Euler characteristic `Σ (-1)^i q^j b^{i,j}`.
    pub fn euler_characteristic(&self) -> IntPolynomial {
        self.cells().fold(IntPolynomial::zero(), |acc, ((i, j), v)| {
            let sign: i64 = if i % 2 == 0 { 1 } else { -1 };
            &acc + &IntPolynomial::monomial(sign * v as i64, j)
        })
    }

    /// Generating polynomial `Σ t^i q^j b^{i,j}`.
    pub fn poincare(&self) -> TwoVarPolynomial {
        let mut p = TwoVarPolynomial::zero();
        for ((i, j), v) in self.cells() {
            p.add_term(i as u32, j as u32, BigInt::from(v));
        }
        p
    }
}

impl Serialize for BigradedTable {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.cells.len()))?;
        for ((i, j), v) in self.cells() {
            seq.serialize_element(&[i as u64, j as u64, v])?;
        }
        seq.end()
    }
}

impl fmt::Display for BigradedTable {
    /// Aligned grid: one row per `j` (highest first), one column per `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "(all zero)");
        }
        let max_i = self.cells.keys().map(|&(i, _)| i).max().unwrap();
        let max_j = self.cells.keys().map(|&(_, j)| j).max().unwrap();
        let width = self.cells.values().map(|v| v.to_string().len()).max().unwrap().max(2);
        write!(f, "{:>4} |", "j\\i")?;
        for i in 0..=max_i {
            write!(f, " {i:>width$}")?;
        }
        writeln!(f)?;
        for j in (0..=max_j).rev() {
            write!(f, "{j:>4} |")?;
            for i in 0..=max_i {
                match self.get(i, j) {
                    0 => write!(f, " {:>width$}", ".")?,
                    v => write!(f, " {v:>width$}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
