//! Cohomology of the chromatic complexes: Betti tables over ℚ, Poincaré
//! polynomials, and integral torsion through Smith normal forms.
//!
//! `dim H^{i,j} = dim C^{i,j} - rank d^{i,j} - rank d^{i-1,j}`, with each
//! rank computed exactly.

pub mod rank;
pub mod snf;

use std::collections::BTreeMap;

pub use rank::{rank, rank_and_pivot_rows, rank_bareiss};
pub use snf::{smith_normal_form, smith_normal_form_dense, smith_normal_form_with_unit_pivots, SmithForm};

use crate::complex::{CochainComplex, Theory, DEFAULT_MAX_EDGES};
use crate::error::Result;
use crate::graph::{Graph, Normalized};
use crate::poly::TwoVarPolynomial;
pub use crate::table::BigradedTable;

/// Ranks of every differential of a complex, keyed by source cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentialRanks {
    pub dims: BigradedTable,
    pub ranks: BTreeMap<(usize, usize), usize>,
}

impl DifferentialRanks {
    /// Ranks with clearing: a generator of `C^{i,j}` that is the lowest row
    /// of a reduced column of `d^{i-1,j}` can be swapped for that column,
    /// which `d^{i,j}` kills, so its column is left out of `d^{i,j}`.
    pub fn of(complex: &CochainComplex) -> Self {
        let mut ranks = BTreeMap::new();
        let mut cleared: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (i, j) in complex.cells() {
            let skip = cleared.remove(&(i, j)).unwrap_or_default();
            let (r, lows) = rank_and_pivot_rows(&complex.differential_skipping(i, j, &skip));
            ranks.insert((i, j), r);
            cleared.insert((i + 1, j), lows);
        }
        DifferentialRanks { dims: complex.dimension_table(), ranks }
    }

    /// Ranks of the full differentials, without clearing.
    pub fn of_unreduced(complex: &CochainComplex) -> Self {
        let ranks = complex
            .cells()
            .map(|(i, j)| ((i, j), rank(&complex.differential(i, j))))
            .collect();
        DifferentialRanks { dims: complex.dimension_table(), ranks }
    }

    pub fn rank(&self, i: usize, j: usize) -> usize {
        self.ranks.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn betti(&self) -> BigradedTable {
        BigradedTable::from_cells(self.dims.cells().map(|((i, j), dim)| {
            let incoming = if i == 0 { 0 } else { self.rank(i - 1, j) };
            let b = dim as usize - self.rank(i, j) - incoming;
            ((i, j), b as u64)
        }))
    }
}

pub fn betti_of_complex(complex: &CochainComplex) -> BigradedTable {
    DifferentialRanks::of(complex).betti()
}

pub fn betti_table(g: &Graph, theory: Theory) -> Result<BigradedTable> {
    betti_table_with_limit(g, theory, DEFAULT_MAX_EDGES)
}

pub fn betti_table_with_limit(g: &Graph, theory: Theory, max_edges: usize) -> Result<BigradedTable> {
    Ok(betti_of_complex(&CochainComplex::with_edge_limit(g, theory, max_edges)?))
}

/// Betti table of a normalized input; a graph with a loop has trivial
/// cohomology.
pub fn betti_table_normalized(g: &Normalized, theory: Theory, max_edges: usize) -> Result<BigradedTable> {
    match g {
        Normalized::Simple(g) => betti_table_with_limit(g, theory, max_edges),
        Normalized::Loop => Ok(BigradedTable::new()),
    }
}

/// Poincaré polynomial `Σ t^i q^j dim H^{i,j}`.
pub fn poincare(g: &Graph, theory: Theory) -> Result<TwoVarPolynomial> {
    Ok(betti_table(g, theory)?.poincare())
}

/// Terms of `p` with `i + j = d`.
pub fn homogeneous_part(p: &TwoVarPolynomial, d: u32) -> TwoVarPolynomial {
    p.homogeneous_part(d)
}

/// Smith forms of every differential `d^{i,j}`, keyed by source cell.
///
/// Uses clearing over ℤ: when a reduced column `v` of `d^{i-1,j}` ends in `±1`
/// at row `r`, swapping `e_r` for `v` is a unimodular (triangular, unit
/// diagonal) change of basis of `C^{i,j}` after which column `r` of `d^{i,j}`
/// is zero. Zero columns do not change a Smith form, so they are skipped.
pub fn differential_smith_forms(
    g: &Graph,
    theory: Theory,
    max_edges: usize,
) -> Result<BTreeMap<(usize, usize), SmithForm>> {
    let complex = CochainComplex::with_edge_limit(g, theory, max_edges)?;
    let mut forms = BTreeMap::new();
    let mut cleared: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (i, j) in complex.cells() {
        let skip = cleared.remove(&(i, j)).unwrap_or_default();
        let (form, units) = smith_normal_form_with_unit_pivots(&complex.differential_skipping(i, j, &skip))?;
        forms.insert((i, j), form);
        cleared.insert((i + 1, j), units);
    }
    Ok(forms)
}

/// Whether every integral cohomology group of the reduced complex is free.
///
/// Since kernels of integer maps are saturated, the torsion of `H^{i+1,j}`
/// over ℤ is the torsion of `coker d^{i,j}`, given by the invariant factors
/// of `d^{i,j}` that exceed one.
pub fn torsion_free(g: &Graph) -> Result<bool> {
    Ok(differential_smith_forms(g, Theory::Reduced, DEFAULT_MAX_EDGES)?
        .values()
        .all(SmithForm::is_torsion_free))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, path, star, unlabeled_trees};

    fn table(cells: &[((usize, usize), u64)]) -> BigradedTable {
        BigradedTable::from_cells(cells.iter().copied())
    }

    #[test]
    fn trees_have_one_class() {
        for n in 1..=7 {
            for t in unlabeled_trees(n) {
                assert_eq!(betti_table(&t, Theory::Reduced).unwrap(), table(&[((0, n - 1), 1)]));
                assert_eq!(poincare(&t, Theory::Reduced).unwrap(), TwoVarPolynomial::monomial(1, 0, n as u32 - 1));
                // standard theory of a tree: q^n + q^(n-1)
                assert_eq!(
                    betti_table(&t, Theory::Standard).unwrap(),
                    table(&[((0, n), 1), ((0, n - 1), 1)])
                );
            }
        }
    }

    #[test]
    fn cycles() {
        for n in 3..=7 {
            let expected: Vec<_> = (0..=n - 2).map(|i| ((i, n - 1 - i), 1)).collect();
            assert_eq!(betti_table(&cycle(n), Theory::Reduced).unwrap(), table(&expected));
        }
    }

    #[test]
    fn complete_four() {
        assert_eq!(
            betti_table(&complete(4), Theory::Reduced).unwrap(),
            table(&[((0, 3), 1), ((1, 2), 3), ((2, 1), 2)])
        );
    }

    #[test]
    fn triangle_ranks() {
        let c = CochainComplex::new(&cycle(3), Theory::Reduced).unwrap();
        let r = DifferentialRanks::of(&c);
        let d0: usize = (0..3).map(|j| r.rank(0, j)).sum();
        assert_eq!(d0, 3);
    }

    #[test]
    fn loops_are_trivial() {
        let looped = crate::graph::normalize([(0, 1), (1, 1)], 2, 0).unwrap();
        assert!(betti_table_normalized(&looped, Theory::Reduced, 20).unwrap().is_empty());
    }

    #[test]
    fn clearing_keeps_smith_forms() {
        for g in [complete(4), complete(5), cycle(5), crate::graph::families::bowtie()] {
            for theory in [Theory::Reduced, Theory::Standard] {
                let c = CochainComplex::new(&g, theory).unwrap();
                let cleared = differential_smith_forms(&g, theory, DEFAULT_MAX_EDGES).unwrap();
                for (i, j) in c.cells() {
                    assert_eq!(cleared[&(i, j)], smith_normal_form(&c.differential(i, j)).unwrap());
                }
            }
        }
    }

    #[test]
    fn clearing_keeps_ranks() {
        for n in 1..=5 {
            for g in crate::graph::families::connected_labeled_graphs(n, 10) {
                for theory in [Theory::Reduced, Theory::Standard] {
                    let c = CochainComplex::new(&g, theory).unwrap();
                    assert_eq!(DifferentialRanks::of(&c), DifferentialRanks::of_unreduced(&c), "{g}");
                }
            }
        }
    }

    #[test]
    fn odd_cycle_standard_top_degree() {
        for n in [3usize, 5] {
            let p = poincare(&cycle(n), Theory::Standard).unwrap();
            let mut expected = TwoVarPolynomial::zero();
            for k in (0..=n - 3).step_by(2) {
                expected = &expected + &TwoVarPolynomial::monomial(1, k as u32, (n - k) as u32);
            }
            assert_eq!(homogeneous_part(&p, n as u32), expected);
        }
    }

    #[test]
    fn homogeneous_part_below_support_is_zero() {
        let p = poincare(&path(4), Theory::Standard).unwrap();
        assert_eq!(homogeneous_part(&p, 4), TwoVarPolynomial::monomial(1, 0, 4));
        assert!(homogeneous_part(&p, 2).is_zero());
    }

    #[test]
    fn torsion_free_small_graphs() {
        for g in [path(5), star(4), cycle(5), complete(4)] {
            assert!(torsion_free(&g).unwrap());
        }
    }

    #[test]
    fn rank_routes_agree_on_differentials() {
        for theory in [Theory::Reduced, Theory::Standard] {
            let c = CochainComplex::new(&complete(4), theory).unwrap();
            for (i, j) in c.cells() {
                let d = c.differential(i, j);
                let r = rank(&d);
                assert_eq!(r, rank_bareiss(&d));
                assert_eq!(r, smith_normal_form(&d).unwrap().rank());
            }
        }
    }
}
