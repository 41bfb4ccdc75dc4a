//! Smith normal form invariant factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::rank::combine;
use crate::complex::SparseIntMatrix;
use crate::error::{Error, Result};
use crate::poly::json_int;

/// Largest `rows · cols` accepted by the dense fallback.
pub const MAX_DENSE_SNF_CELLS: usize = 4_000_000;

/// Invariant factors `d_1 | d_2 | … | d_r`, all positive; `r` is the rank.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one; each contributes a `ℤ/d` torsion summand to
    /// the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.factors.iter().all(One::is_one)
    }

    fn check_chain(&self) -> bool {
        self.factors.iter().all(Signed::is_positive)
            && self.factors.windows(2).all(|w| w[0].is_zero() || (&w[1] % &w[0]).is_zero())
    }
}

impl Serialize for SmithForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.factors.iter().map(json_int))
    }
}

/// Unimodular column reduction toward distinct lowest rows.
///
/// When a column's lowest entry `b` meets a stored pivot `a` on the same row,
/// a divisible pair is cleared by `col -= (b/a)·pivot`; otherwise the pair is
/// replaced through the extended gcd, which leaves `gcd(a, b)` in the pivot.
/// Returns the surviving columns, or `None` on `i64` overflow.
fn unimodular_reduce(m: &SparseIntMatrix) -> Option<Vec<Vec<(usize, i64)>>> {
    let mut pivot_of_row: Vec<Option<Vec<(usize, i64)>>> = vec![None; m.rows()];
    for mut col in m.columns() {
        while let Some(&(low, b)) = col.last() {
            let Some(pivot) = pivot_of_row[low].as_mut() else {
                pivot_of_row[low] = Some(col);
                break;
            };
            let a = pivot.last().unwrap().1;
            if b % a == 0 {
                col = combine(1, &col, b / a, pivot)?;
            } else {
                let e = a.extended_gcd(&b);
                let g = e.gcd;
                // [pivot', col'] = [x·pivot + y·col, (b/g)·pivot - (a/g)·col], det = -1
                let new_pivot = combine(e.x, pivot, e.y.checked_neg()?, &col)?;
                let new_col = combine(b / g, pivot, a / g, &col)?;
                debug_assert_eq!(new_pivot.last().map(|p| p.0), Some(low));
                *pivot = new_pivot;
                col = new_col;
            }
        }
    }
    Some(pivot_of_row.into_iter().flatten().collect())
}

/// Invariant factors of an integer matrix.
///
/// A unimodular sparse column pass comes first. Surviving columns that end in
/// `±1` split off as factors 1 (see `eliminate_units`), and only the remaining
/// columns go through the dense smallest-pivot algorithm.
pub fn smith_normal_form(m: &SparseIntMatrix) -> Result<SmithForm> {
    smith_normal_form_with_unit_pivots(m).map(|(form, _)| form)
}

/// [`smith_normal_form`], plus the rows where a column surviving the sparse
/// pass ends in `±1` (empty if the dense fallback ran on overflow).
///
/// Such a column lies in the column lattice of `m` and has a unit entry in its
/// row, so it can replace that row's basis vector by a unimodular change of
/// basis.
pub fn smith_normal_form_with_unit_pivots(m: &SparseIntMatrix) -> Result<(SmithForm, Vec<usize>)> {
    let Some(survivors) = unimodular_reduce(m) else {
        return Ok((smith_normal_form_dense(m)?, Vec::new()));
    };
    let mut unit_rows: Vec<usize> = survivors
        .iter()
        .map(|c| *c.last().unwrap())
        .filter(|&(_, v)| v.abs() == 1)
        .map(|(r, _)| r)
        .collect();
    unit_rows.sort_unstable();
    let ones = unit_rows.len();
    let core = match eliminate_units(&survivors) {
        Some(core) => core,
        None => return Ok((smith_normal_form_dense(m)?, Vec::new())),
    };
    let mut factors = vec![BigInt::one(); ones];
    if !core.is_empty() {
        let mut rows: Vec<usize> = core.iter().flat_map(|c| c.iter().map(|&(r, _)| r)).collect();
        rows.sort_unstable();
        rows.dedup();
        let triplets = core.iter().enumerate().flat_map(|(c, col)| {
            let rows = &rows;
            col.iter().map(move |&(r, v)| (rows.binary_search(&r).unwrap(), c, v))
        });
        let compact = SparseIntMatrix::from_triplets(rows.len(), core.len(), triplets)?;
        factors.extend(smith_normal_form_dense(&compact)?.factors);
    }
    Ok((finish(factors)?, unit_rows))
}

/// Removes every survivor that ends in `±1` together with its lowest row.
///
/// Working down from the highest such row `r`, the row is cleared from the
/// remaining columns by column operations against its pivot column; the pivot
/// column then splits off as a factor 1 by row operations that touch nothing
/// else. Pivot columns have no entries below their row, so each column is
/// used in its original form. Returns the other columns, restricted to the
/// rows that remain, or `None` on overflow.
fn eliminate_units(survivors: &[Vec<(usize, i64)>]) -> Option<Vec<Vec<(usize, i64)>>> {
    let mut pivot_at: std::collections::HashMap<usize, &[(usize, i64)]> = std::collections::HashMap::new();
    let mut others = Vec::new();
    for col in survivors {
        let &(low, v) = col.last().unwrap();
        if v.abs() == 1 {
            pivot_at.insert(low, col);
        } else {
            others.push(col.clone());
        }
    }
    for col in &mut others {
        while let Some(&(r, a)) = col.iter().rev().find(|(r, _)| pivot_at.contains_key(r)) {
            let pivot = pivot_at[&r];
            let p = pivot.last().unwrap().1;
            *col = combine(1, col, a.checked_mul(p)?, pivot)?;
        }
    }
    Some(others)
}

/// Dense Smith normal form: repeatedly move a nonzero entry of least absolute
/// value to the pivot, clear its row and column by division with remainder,
/// and fold in any row whose entries the pivot does not divide.
pub fn smith_normal_form_dense(m: &SparseIntMatrix) -> Result<SmithForm> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows.saturating_mul(cols) > MAX_DENSE_SNF_CELLS {
        return Err(Error::Precondition(format!(
            "{rows}x{cols} matrix exceeds the dense Smith form limit"
        )));
    }
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let mut factors = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pr, pc)) = smallest_entry(&a, t) else {
                return finish(factors);
            };
            a.swap(t, pr);
            for row in a.iter_mut() {
                row.swap(t, pc);
            }
            let mut clean = true;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    let (top, bottom) = a.split_at_mut(i);
                    for (x, y) in bottom[0][t..].iter_mut().zip(&top[t][t..]) {
                        *x = &*x - &q * y;
                    }
                    clean &= a[i][t].is_zero();
                }
            }
            for k in t + 1..cols {
                if !a[t][k].is_zero() {
                    let q = a[t][k].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let v = &row[k] - &q * &row[t];
                        row[k] = v;
                    }
                    clean &= a[t][k].is_zero();
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the rest of the block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|k| !(&a[i][k] % &a[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let (top, bottom) = a.split_at_mut(i);
                    for (x, y) in top[t][t..].iter_mut().zip(&bottom[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
    }
    finish(factors)
}

fn smallest_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (k, v) in row.iter().enumerate().skip(t) {
            if !v.is_zero() && best.is_none_or(|(bi, bk)| v.abs() < a[bi][bk].abs()) {
                best = Some((i, k));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn finish(factors: Vec<BigInt>) -> Result<SmithForm> {
    let form = SmithForm { factors };
    if form.check_chain() {
        Ok(form)
    } else {
        Err(Error::Internal(format!("invariant factors {:?} break the divisibility chain", form.factors)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::rank::rank_bareiss;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(rows)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_and_scalar() {
        assert_eq!(smith_normal_form(&SparseIntMatrix::identity(4)).unwrap().factors, ints(&[1, 1, 1, 1]));
        assert_eq!(smith_normal_form(&m(&[vec![2]])).unwrap().factors, ints(&[2]));
        assert_eq!(smith_normal_form(&m(&[vec![-3]])).unwrap().factors, ints(&[3]));
        assert!(smith_normal_form(&SparseIntMatrix::zero(2, 3)).unwrap().factors.is_empty());
    }

    #[test]
    fn classic_examples() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(smith_normal_form(&m(&[vec![2, 0], vec![0, 3]])).unwrap().factors, ints(&[1, 6]));
        let a = m(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&a).unwrap().factors, ints(&[2, 6, 12]));
        assert_eq!(smith_normal_form_dense(&a).unwrap().factors, ints(&[2, 6, 12]));
        // boundary of the projective plane's 2-cell: torsion ℤ/2
        let b = m(&[vec![2], vec![0]]);
        let f = smith_normal_form(&b).unwrap();
        assert_eq!(f.torsion(), ints(&[2]));
        assert!(!f.is_torsion_free());
    }

    #[test]
    fn dense_limit() {
        let big = SparseIntMatrix::zero(3000, 3000);
        assert!(smith_normal_form_dense(&big).is_err());
        assert_eq!(smith_normal_form(&big).unwrap().rank(), 0);
    }

    fn det_gcd_invariants(a: &SparseIntMatrix) -> BigInt {
        // product of all factors = gcd of maximal nonvanishing minors; for a
        // square nonsingular matrix this is |det|
        let d = a.to_dense();
        let n = d.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut det = BigInt::zero();
        permute(&mut perm, 0, &mut |p| {
            let sign = parity(p);
            let prod = (0..n).fold(BigInt::one(), |acc, i| acc * d[i][p[i]]);
            det += if sign { -prod } else { prod };
        });
        det.abs()
    }

    fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == p.len() {
            f(p);
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, f);
            p.swap(k, i);
        }
    }

    fn parity(p: &[usize]) -> bool {
        let mut odd = false;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                odd ^= p[i] > p[j];
            }
        }
        odd
    }

    proptest! {
        #[test]
        fn factors_multiply_to_determinant(data in proptest::collection::vec(-4i64..=4, 16)) {
            let dense: Vec<Vec<i64>> = data.chunks(4).map(<[i64]>::to_vec).collect();
            let a = m(&dense);
            let f = smith_normal_form(&a).unwrap();
            prop_assert_eq!(f.factors.clone(), smith_normal_form_dense(&a).unwrap().factors);
            prop_assert_eq!(f.rank(), rank_bareiss(&a));
            if f.rank() == 4 {
                let prod = f.factors.iter().fold(BigInt::one(), |acc, d| acc * d);
                prop_assert_eq!(prod, det_gcd_invariants(&a));
            }
        }

        #[test]
        fn rectangular_agrees_with_dense(
            rows in 1usize..6,
            cols in 1usize..6,
            data in proptest::collection::vec(-3i64..=3, 36),
        ) {
            let dense: Vec<Vec<i64>> = (0..rows).map(|r| data[r * 6..r * 6 + cols].to_vec()).collect();
            let a = m(&dense);
            prop_assert_eq!(smith_normal_form(&a).unwrap(), smith_normal_form_dense(&a).unwrap());
            prop_assert_eq!(smith_normal_form(&a.transpose()).unwrap(), smith_normal_form(&a).unwrap());
        }
    }
}
