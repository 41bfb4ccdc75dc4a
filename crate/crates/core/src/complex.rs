//! The bigraded chromatic cochain complex over the algebra `ℤ[x]/(x²)`.
//!
//! A generator of `C^{i,j}` is an *enhanced state*: a set of `i` edges plus a
//! color (`1` or `x`) on every connected component of the spanning subgraph
//! those edges form. The degree `j` counts the components colored `x`. In the
//! reduced theory the component holding the base vertex is always colored `x`
//! and is not counted, so `j = #x - 1`.
//!
//! The differential adds one missing edge in every possible way. When the edge
//! merges two components their colors multiply (`1·1 = 1`, `1·x = x·1 = x`,
//! `x·x = 0`, the last dropping the term); otherwise the coloring is carried
//! over unchanged. The term for edge `e` is negated when the source state
//! contains an odd number of edges with index below `e`.
//!
//! ```
//! use chroma::complex::{CochainComplex, Theory};
//! use chroma::graph::families::cycle;
//!
//! let triangle = CochainComplex::new(&cycle(3), Theory::Reduced).unwrap();
//! assert_eq!(triangle.basis(0, 1).len(), 2);
//! assert!(triangle.differentials_square_to_zero());
//! ```

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{EdgeSubset, Graph};
use crate::table::BigradedTable;

/// Largest edge count the state enumeration accepts by default.
pub const DEFAULT_MAX_EDGES: usize = 20;

/// Largest vertex count accepted; a state can have one component per vertex,
/// each colored two ways.
pub const MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theory {
    /// Base component forced to `x`; `j = #x - 1`.
    Reduced,
    /// All colorings allowed; `j = #x`.
    Standard,
}

impl Theory {
    pub fn name(self) -> &'static str {
        match self {
            Theory::Reduced => "reduced",
            Theory::Standard => "standard",
        }
    }
}

/// An edge subset with a two-coloring of its components.
///
/// Bit `t` of `coloring` is set when component `t` (in minimal-vertex order)
/// is colored `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnhancedState {
    pub state: EdgeSubset,
    pub coloring: u64,
}

impl EnhancedState {
    pub fn x_count(&self) -> usize {
        self.coloring.count_ones() as usize
    }
}

/// Ordered generators of one cell `C^{i,j}`, sorted by `(state, coloring)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CochainBasis {
    states: Vec<EnhancedState>,
}

impl CochainBasis {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[EnhancedState] {
        &self.states
    }

    pub fn index_of(&self, s: &EnhancedState) -> Option<usize> {
        self.states.binary_search(s).ok()
    }
}

/// Integer matrix stored as `(row, col, value)` triplets sorted by column, then
/// row, with at most one entry per position and no zero entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseIntMatrix { rows, cols, entries: Vec::new() }
    }

    /// Builds a matrix from triplets, summing repeated positions.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut keyed = Vec::new();
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::Precondition(format!(
                    "entry ({r}, {c}) outside a {rows}x{cols} matrix"
                )));
            }
            keyed.push((c, r, v));
        }
        keyed.sort_unstable_by_key(|&(c, r, _)| (c, r));
        let mut entries: Vec<(usize, usize, i64)> = Vec::with_capacity(keyed.len());
        for (c, r, v) in keyed {
            match entries.last_mut() {
                Some(last) if (last.0, last.1) == (r, c) => last.2 += v,
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|&(_, _, v)| v != 0);
        Ok(SparseIntMatrix { rows, cols, entries })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        Self::from_triplets(rows.len(), cols, triplets).expect("rectangular input")
    }

    pub fn identity(n: usize) -> Self {
        SparseIntMatrix { rows: n, cols: n, entries: (0..n).map(|i| (i, i, 1)).collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, i64)] {
        &self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for &(r, c, v) in &self.entries {
            out[r][c] = v;
        }
        out
    }

    /// Columns as sparse vectors of `(row, value)` sorted by row.
    pub fn columns(&self) -> Vec<Vec<(usize, i64)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for &(r, c, v) in &self.entries {
            cols[c].push((r, v));
        }
        cols
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (c, r));
        SparseIntMatrix { rows: self.cols, cols: self.rows, entries }
    }

    /// Matrix product `self · rhs`, one column at a time through a dense
    /// accumulator. An entry that overflows `i64` is an error.
    pub fn mul(&self, rhs: &SparseIntMatrix) -> Result<SparseIntMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Precondition(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let overflow = || Error::Precondition("matrix product overflows i64".into());
        let left = self.column_starts();
        let mut acc = vec![0i64; self.rows];
        let mut seen = vec![false; self.rows];
        let mut touched = Vec::new();
        let mut entries = Vec::new();
        for (c, column) in rhs.column_slices() {
            for &(k, _, b) in column {
                for &(r, _, a) in &self.entries[left[k]..left[k + 1]] {
                    if !seen[r] {
                        seen[r] = true;
                        touched.push(r);
                    }
                    acc[r] = a.checked_mul(b).and_then(|p| acc[r].checked_add(p)).ok_or_else(overflow)?;
                }
            }
            touched.sort_unstable();
            for &r in &touched {
                if acc[r] != 0 {
                    entries.push((r, c, acc[r]));
                }
                acc[r] = 0;
                seen[r] = false;
            }
            touched.clear();
        }
        Ok(SparseIntMatrix { rows: self.rows, cols: rhs.cols, entries })
    }

    /// `starts[c]..starts[c + 1]` indexes the entries of column `c`.
    fn column_starts(&self) -> Vec<usize> {
        let mut starts = vec![0; self.cols + 1];
        for &(_, c, _) in &self.entries {
            starts[c + 1] += 1;
        }
        for c in 0..self.cols {
            starts[c + 1] += starts[c];
        }
        starts
    }

    fn column_slices(&self) -> impl Iterator<Item = (usize, &[(usize, usize, i64)])> {
        self.entries.chunk_by(|a, b| a.1 == b.1).map(|chunk| (chunk[0].1, chunk))
    }

    /// `rows cols` on the first line, then one `r c v` line per entry.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for (r, c, v) in &self.entries {
            writeln!(out, "{r} {c} {v}").unwrap();
        }
        out
    }

    pub fn parse_triplet_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let bad = |line: usize, message: &str| Error::Parse { line: line + 1, message: message.into() };
        let (hl, header) = lines.next().ok_or_else(|| bad(0, "missing `rows cols` header"))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(hl, "expected `rows cols`"))?;
        let [rows, cols] = dims[..] else {
            return Err(bad(hl, "expected `rows cols`"));
        };
        let mut triplets = Vec::new();
        for (ln, l) in lines {
            let w: Vec<&str> = l.split_whitespace().collect();
            let [r, c, v] = w[..] else {
                return Err(bad(ln, "expected `r c v`"));
            };
            let parsed = (r.parse(), c.parse(), v.parse());
            let (Ok(r), Ok(c), Ok(v)) = parsed else {
                return Err(bad(ln, "expected integers"));
            };
            triplets.push((r, c, v));
        }
        Self::from_triplets(rows, cols, triplets)
    }
}

/// The full bigraded complex of one graph: every nonempty basis cell.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    graph: Graph,
    theory: Theory,
    bases: BTreeMap<(usize, usize), CochainBasis>,
    // component label of every vertex, `n` entries per state
    labels: Vec<u8>,
}

impl CochainComplex {
    pub fn new(g: &Graph, theory: Theory) -> Result<Self> {
        Self::with_edge_limit(g, theory, DEFAULT_MAX_EDGES)
    }

    pub fn with_edge_limit(g: &Graph, theory: Theory, max_edges: usize) -> Result<Self> {
        let e = g.edge_count();
        let limit = max_edges.min(crate::graph::MAX_EDGES - 1);
        if e > limit {
            return Err(Error::TooManyEdges { edges: e, limit });
        }
        if g.vertex_count() > MAX_VERTICES {
            return Err(Error::TooManyVertices { vertices: g.vertex_count(), limit: MAX_VERTICES });
        }
        let mut bases: BTreeMap<(usize, usize), CochainBasis> = BTreeMap::new();
        // bitmask order is (state, coloring) order within every cell
        let n = g.vertex_count();
        let mut labels = vec![0u8; n << e];
        for bits in 0..1u64 << e {
            let state = EdgeSubset(bits);
            let here = &mut labels[(bits as usize) * n..][..n];
            let count = fill_labels(g, state, here);
            let i = state.dimension();
            for coloring in colorings(here[g.base()] as usize, count, theory) {
                let es = EnhancedState { state, coloring };
                bases.entry((i, degree(&es, theory))).or_default().states.push(es);
            }
        }
        Ok(CochainComplex { graph: g.clone(), theory, bases, labels })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    /// Basis of `C^{i,j}`; empty outside the support.
    pub fn basis(&self, i: usize, j: usize) -> &CochainBasis {
        static EMPTY: CochainBasis = CochainBasis { states: Vec::new() };
        self.bases.get(&(i, j)).unwrap_or(&EMPTY)
    }

    /// Cells with a nonempty basis, in increasing `(i, j)` order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bases.keys().copied()
    }

    pub fn dimension_table(&self) -> BigradedTable {
        BigradedTable::from_cells(self.bases.iter().map(|(&k, b)| (k, b.len() as u64)))
    }

    /// Matrix of `d^{i,j}: C^{i,j} -> C^{i+1,j}`; rows index the target basis.
    pub fn differential(&self, i: usize, j: usize) -> SparseIntMatrix {
        self.differential_skipping(i, j, &[])
    }

    /// [`differential`](Self::differential) with the source columns listed in
    /// `skip` (sorted) left empty.
    pub fn differential_skipping(&self, i: usize, j: usize, skip: &[usize]) -> SparseIntMatrix {
        let source = self.basis(i, j);
        let target = self.basis(i + 1, j);
        let mut entries = Vec::new();
        let edges = self.graph.edges();
        let states = source.states();
        let n = self.graph.vertex_count();
        let mut column = Vec::with_capacity(edges.len());
        for (col, src) in states.iter().enumerate() {
            if skip.binary_search(&col).is_ok() {
                continue;
            }
            let state = src.state;
            let labels = &self.labels[(state.bits() as usize) * n..][..n];
            column.clear();
            for (e, &(u, v)) in edges.iter().enumerate() {
                if state.contains(e) {
                    continue;
                }
                let (cu, cv) = (labels[u] as usize, labels[v] as usize);
                if cu != cv && src.coloring >> cu & 1 == 1 && src.coloring >> cv & 1 == 1 {
                    continue; // x·x = 0
                }
                let coloring = if cu == cv { src.coloring } else { carry_coloring(src.coloring, cu, cv) };
                let image = EnhancedState { state: state.with(e), coloring };
                debug_assert_eq!(degree(&image, self.theory), j);
                let row = target
                    .index_of(&image)
                    .expect("image of a basis state lies in the target basis");
                let sign = if state.count_below(e) % 2 == 0 { 1 } else { -1 };
                column.push((row, col, sign));
            }
            column.sort_unstable_by_key(|&(row, _, _)| row);
            entries.extend_from_slice(&column);
        }
        SparseIntMatrix { rows: target.len(), cols: source.len(), entries }
    }

    /// Checks `d^{i+1,j} ∘ d^{i,j} = 0` on every cell.
    pub fn differentials_square_to_zero(&self) -> bool {
        self.cells().all(|(i, j)| {
            let first = self.differential(i, j);
            let second = self.differential(i + 1, j);
            second.mul(&first).map(|m| m.is_zero()).unwrap_or(false)
        })
    }
}

fn degree(s: &EnhancedState, theory: Theory) -> usize {
    match theory {
        Theory::Reduced => s.x_count() - 1,
        Theory::Standard => s.x_count(),
    }
}

/// Writes the component label of every vertex of `(V, s)` into `out`, with
/// components numbered by minimal vertex. Returns the component count.
fn fill_labels(g: &Graph, s: EdgeSubset, out: &mut [u8]) -> usize {
    for (v, slot) in out.iter_mut().enumerate() {
        *slot = v as u8;
    }
    // out[v] holds a parent pointer until the final pass
    let find = |out: &mut [u8], mut v: usize| {
        while out[v] as usize != v {
            v = out[v] as usize;
        }
        v
    };
    for e in s.iter() {
        let (u, v) = g.edges()[e];
        let (ru, rv) = (find(out, u), find(out, v));
        if ru != rv {
            out[ru.max(rv)] = ru.min(rv) as u8;
        }
    }
    // parents are smaller vertices, so each parent is labeled before its child
    let mut count = 0;
    for v in 0..out.len() {
        let p = out[v] as usize;
        if p == v {
            out[v] = count;
            count += 1;
        } else {
            out[v] = out[p];
        }
    }
    count as usize
}

/// Colorings of `count` components, ascending as bitmasks; the reduced theory
/// forces the base component `base_label` to `x`.
fn colorings(base_label: usize, count: usize, theory: Theory) -> impl Iterator<Item = u64> {
    let forced = match theory {
        Theory::Reduced => 1u64 << base_label,
        Theory::Standard => 0,
    };
    (0..1u64 << count).filter(move |c| c & forced == forced)
}

/// Moves a coloring across the merge of components `a` and `b`. Components
/// are ordered by minimal vertex, so the merged one takes the smaller index and
/// the ones above the larger index move down by one. The merged component is
/// `x` if either part was; the caller has already discarded the `x·x` case.
fn carry_coloring(coloring: u64, a: usize, b: usize) -> u64 {
    let (lo, hi) = (a.min(b), a.max(b));
    let below = coloring & ((1u64 << hi) - 1);
    let above = (coloring >> hi >> 1) << hi;
    below | above | ((coloring >> hi & 1) << lo)
}

/// `dim C^{i,j}` for every nonzero cell.
pub fn total_cochain_table(g: &Graph, theory: Theory) -> Result<BigradedTable> {
    Ok(CochainComplex::new(g, theory)?.dimension_table())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, path, star};
    use crate::graph::vertex_union;
    use proptest::prelude::*;

    fn table(cells: &[((usize, usize), u64)]) -> BigradedTable {
        BigradedTable::from_cells(cells.iter().copied())
    }

    #[test]
    fn triangle_reduced_dimensions() {
        let t = total_cochain_table(&cycle(3), Theory::Reduced).unwrap();
        assert_eq!(
            t,
            table(&[
                ((0, 0), 1), ((0, 1), 2), ((0, 2), 1),
                ((1, 0), 3), ((1, 1), 3),
                ((2, 0), 3),
                ((3, 0), 1),
            ])
        );
        assert_eq!(t.column_total(1), 6);
    }

    #[test]
    fn single_vertex_and_edge() {
        let one = Graph::single_vertex();
        assert_eq!(total_cochain_table(&one, Theory::Reduced).unwrap(), table(&[((0, 0), 1)]));
        assert_eq!(
            total_cochain_table(&one, Theory::Standard).unwrap(),
            table(&[((0, 0), 1), ((0, 1), 1)])
        );
        assert_eq!(
            total_cochain_table(&path(2), Theory::Reduced).unwrap(),
            table(&[((0, 0), 1), ((0, 1), 1), ((1, 0), 1)])
        );
    }

    #[test]
    fn merging_two_x_components_is_zero() {
        let c = CochainComplex::new(&path(2), Theory::Reduced).unwrap();
        let d = c.differential(0, 1);
        assert_eq!((d.rows(), d.cols()), (0, 1));
        assert!(d.is_zero());
        // j = 0: base x, other vertex 1, merged to x with sign +1
        assert_eq!(c.differential(0, 0).to_dense(), vec![vec![1]]);
    }

    #[test]
    fn signs_follow_lower_edge_parity() {
        // triangle edges 0:(0,1) 1:(0,2) 2:(1,2); j = 0 cell is the plain cube
        let c = CochainComplex::new(&cycle(3), Theory::Reduced).unwrap();
        let d1 = c.differential(1, 0);
        let basis1 = c.basis(1, 0);
        let basis2 = c.basis(2, 0);
        let col = |s: &[usize]| {
            basis1.index_of(&EnhancedState { state: EdgeSubset::from_indices(s.iter().copied()), coloring: 1 }).unwrap()
        };
        let row = |s: &[usize]| {
            basis2.index_of(&EnhancedState { state: EdgeSubset::from_indices(s.iter().copied()), coloring: 1 }).unwrap()
        };
        let dense = d1.to_dense();
        // {1} + edge 0: no smaller edge present -> +1
        assert_eq!(dense[row(&[0, 1])][col(&[1])], 1);
        // {0} + edge 1: edge 0 < 1 present -> -1
        assert_eq!(dense[row(&[0, 1])][col(&[0])], -1);
        // {0} + edge 2 -> -1, {1} + edge 2 -> -1, {2} + edge 0 -> +1
        assert_eq!(dense[row(&[0, 2])][col(&[0])], -1);
        assert_eq!(dense[row(&[1, 2])][col(&[1])], -1);
        assert_eq!(dense[row(&[0, 2])][col(&[2])], 1);
    }

    #[test]
    fn reduced_bases_color_base_component_x() {
        for g in [cycle(4).with_base(2).unwrap(), star(4).with_base(3).unwrap()] {
            let c = CochainComplex::new(&g, Theory::Reduced).unwrap();
            for (i, j) in c.cells() {
                for s in c.basis(i, j).states() {
                    let labels = g.component_labels(s.state);
                    assert_eq!(s.coloring >> labels.label[g.base()] & 1, 1);
                    assert_eq!(s.x_count(), j + 1);
                    assert_eq!(s.state.dimension(), i);
                }
            }
        }
    }

    #[test]
    fn column_totals_match_component_counts() {
        for (g, theory) in [(complete(4), Theory::Reduced), (cycle(5), Theory::Standard)] {
            let t = total_cochain_table(&g, theory).unwrap();
            let mut expected = vec![0u64; g.edge_count() + 1];
            for bits in 0..1u64 << g.edge_count() {
                let s = EdgeSubset(bits);
                let k = g.component_labels(s).count as u32;
                expected[s.dimension()] += match theory {
                    Theory::Reduced => 1 << (k - 1),
                    Theory::Standard => 1 << k,
                };
            }
            for (i, &want) in expected.iter().enumerate() {
                assert_eq!(t.column_total(i), want);
            }
        }
    }

    #[test]
    fn d_squared_vanishes() {
        for g in [cycle(3), complete(4), star(5), vertex_union(&cycle(3), &path(3))] {
            for theory in [Theory::Reduced, Theory::Standard] {
                assert!(CochainComplex::new(&g, theory).unwrap().differentials_square_to_zero());
            }
        }
    }

    #[test]
    fn size_guard() {
        let err = CochainComplex::new(&complete(7), Theory::Reduced).unwrap_err();
        assert_eq!(err, Error::TooManyEdges { edges: 21, limit: 20 });
        assert!(CochainComplex::with_edge_limit(&cycle(5), Theory::Reduced, 4).is_err());
    }

    #[test]
    fn triplet_text_round_trip() {
        let m = SparseIntMatrix::from_dense(&[vec![1, 0, -1], vec![0, 2, 0]]);
        let text = m.to_triplet_text();
        assert_eq!(text, "2 3\n0 0 1\n1 1 2\n0 2 -1\n");
        assert_eq!(SparseIntMatrix::parse_triplet_text(&text).unwrap(), m);
        assert!(SparseIntMatrix::parse_triplet_text("2 2\n0 5 1\n").is_err());
        assert!(SparseIntMatrix::parse_triplet_text("2\n").is_err());
    }

    #[test]
    fn matrix_product() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 1], vec![0, 1]]);
        let b = SparseIntMatrix::from_dense(&[vec![1, -1], vec![0, 1]]);
        assert_eq!(a.mul(&b).unwrap(), SparseIntMatrix::identity(2));
        assert!(a.mul(&SparseIntMatrix::zero(3, 1)).is_err());
    }

    proptest! {
        #[test]
        fn product_matches_dense(
            data_a in proptest::collection::vec(-2i64..=2, 12),
            data_b in proptest::collection::vec(-2i64..=2, 20),
        ) {
            let da: Vec<Vec<i64>> = data_a.chunks(4).map(<[i64]>::to_vec).collect();
            let db: Vec<Vec<i64>> = data_b.chunks(5).map(<[i64]>::to_vec).collect();
            let product: Vec<Vec<i64>> = (0..3)
                .map(|r| (0..5).map(|c| (0..4).map(|k| da[r][k] * db[k][c]).sum()).collect())
                .collect();
            let sparse = SparseIntMatrix::from_dense(&da).mul(&SparseIntMatrix::from_dense(&db)).unwrap();
            prop_assert_eq!(sparse, SparseIntMatrix::from_dense(&product));
        }
    }

    proptest! {
        #[test]
        fn d_squared_vanishes_on_random_graphs(
            mask in 0u32..(1 << 10),
            base in 0usize..5,
            reduced in any::<bool>(),
        ) {
            let pairs = complete(5).edges().to_vec();
            let g = Graph::new(5, (0..10).filter(|i| mask >> i & 1 == 1).map(|i| pairs[i]), base).unwrap();
            let theory = if reduced { Theory::Reduced } else { Theory::Standard };
            prop_assert!(CochainComplex::new(&g, theory).unwrap().differentials_square_to_zero());
        }
    }
}
