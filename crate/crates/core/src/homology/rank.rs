//! Exact rank over ℚ without leaving the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::complex::SparseIntMatrix;

type SparseCol = Vec<(usize, i64)>;

/// `a·x - b·y` for sparse columns sorted by row, dropping zeros.
/// `None` on overflow.
pub(crate) fn combine(a: i64, x: &[(usize, i64)], b: i64, y: &[(usize, i64)]) -> Option<SparseCol> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    combine_into(a, x, b, y, &mut out)?;
    Some(out)
}

/// [`combine`] writing into a reused buffer.
fn combine_into(a: i64, x: &[(usize, i64)], b: i64, y: &[(usize, i64)], out: &mut SparseCol) -> Option<()> {
    out.clear();
    let (mut p, mut q) = (0, 0);
    while p < x.len() || q < y.len() {
        let (row, v) = match (x.get(p), y.get(q)) {
            (Some(&(rx, vx)), Some(&(ry, _))) if rx < ry => {
                p += 1;
                (rx, a.checked_mul(vx)?)
            }
            (Some(&(rx, _)), Some(&(ry, vy))) if ry < rx => {
                q += 1;
                (ry, b.checked_mul(vy)?.checked_neg()?)
            }
            (Some(&(rx, vx)), Some(&(_, vy))) => {
                p += 1;
                q += 1;
                (rx, a.checked_mul(vx)?.checked_sub(b.checked_mul(vy)?)?)
            }
            (Some(&(rx, vx)), None) => {
                p += 1;
                (rx, a.checked_mul(vx)?)
            }
            (None, Some(&(ry, vy))) => {
                q += 1;
                (ry, b.checked_mul(vy)?.checked_neg()?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((row, v));
        }
    }
    Some(())
}

fn remove_content(col: &mut SparseCol) {
    let g = col.iter().fold(0i64, |g, &(_, v)| g.gcd(&v));
    if g > 1 {
        for (_, v) in col.iter_mut() {
            *v /= g;
        }
    }
}

/// Fraction-free column reduction: each column is cleared against earlier
/// columns sharing its lowest nonzero row (`a·col - b·pivot`, then divided by
/// its content; just `col - (b/a)·pivot` when `a = ±1`). Nonzero survivors
/// have distinct lowest rows, so their count is the rank. Returns the rank and
/// those rows, or `None` if an entry would overflow `i64`.
fn sparse_rank(m: &SparseIntMatrix) -> Option<(usize, Vec<usize>)> {
    let mut pivot_of_row: Vec<Option<SparseCol>> = vec![None; m.rows()];
    let mut rank = 0;
    let mut scratch = Vec::new();
    for mut col in m.columns() {
        while let Some(&(low, b)) = col.last() {
            match &pivot_of_row[low] {
                Some(pivot) => {
                    let a = pivot.last().unwrap().1;
                    if a == 1 || a == -1 {
                        combine_into(1, &col, b * a, pivot, &mut scratch)?;
                        std::mem::swap(&mut col, &mut scratch);
                    } else {
                        combine_into(a, &col, b, pivot, &mut scratch)?;
                        std::mem::swap(&mut col, &mut scratch);
                        remove_content(&mut col);
                    }
                }
                None => {
                    pivot_of_row[low] = Some(col);
                    rank += 1;
                    break;
                }
            }
        }
    }
    let lows = (0..m.rows()).filter(|&r| pivot_of_row[r].is_some()).collect();
    Some((rank, lows))
}

/// Rank over ℚ.
///
/// Runs sparse fraction-free elimination in `i64` and falls back to dense
/// Bareiss over arbitrary-precision integers if an entry would overflow.
pub fn rank(m: &SparseIntMatrix) -> usize {
    sparse_rank(m).map_or_else(|| rank_bareiss(m), |(r, _)| r)
}

/// Rank, plus rows that are the lowest entry of some column after sparse
/// reduction (empty if the Bareiss fallback ran).
pub fn rank_and_pivot_rows(m: &SparseIntMatrix) -> (usize, Vec<usize>) {
    sparse_rank(m).unwrap_or_else(|| (rank_bareiss(m), Vec::new()))
}

/// Rank over ℚ by dense Bareiss elimination with partial pivoting on
/// magnitude. Every intermediate entry is a minor of the input, so the
/// divisions are exact.
pub fn rank_bareiss(m: &SparseIntMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(BigInt::from).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut prev = BigInt::from(1);
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .max_by(|&i, &k| a[i][c].abs().cmp(&a[k][c].abs()).then(k.cmp(&i)))
        else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for k in c + 1..cols {
                let v = (&a[r][c] * &a[i][k] - &a[i][c] * &a[r][k]) / &prev;
                a[i][k] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> SparseIntMatrix {
        SparseIntMatrix::from_dense(rows)
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(rank(&SparseIntMatrix::zero(3, 4)), 0);
        assert_eq!(rank(&SparseIntMatrix::zero(0, 0)), 0);
        for k in [1, 5, 40] {
            assert_eq!(rank(&SparseIntMatrix::identity(k)), k);
            assert_eq!(rank_bareiss(&SparseIntMatrix::identity(k)), k);
        }
    }

    #[test]
    fn dependent_rows() {
        let a = m(&[vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(rank_bareiss(&a), 2);
        let b = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank(&b), 2);
    }

    #[test]
    fn overflow_falls_back() {
        let big = i64::MAX / 2;
        let a = m(&[vec![big, big - 1], vec![big - 3, big - 7], vec![5, 9]]);
        assert!(sparse_rank(&a).is_none());
        assert_eq!(rank(&a), 2);
    }

    proptest! {
        #[test]
        fn sparse_and_bareiss_agree(
            rows in 1usize..7,
            cols in 1usize..7,
            data in proptest::collection::vec(-2i64..=2, 49),
        ) {
            let dense: Vec<Vec<i64>> = (0..rows).map(|r| data[r * 7..r * 7 + cols].to_vec()).collect();
            let a = m(&dense);
            let r = rank(&a);
            prop_assert_eq!(r, rank_bareiss(&a));
            prop_assert_eq!(r, rank(&a.transpose()));
            prop_assert!(r <= rows.min(cols));
        }
    }
}
