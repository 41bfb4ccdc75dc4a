//! Simple graphs with a distinguished base vertex.
//!
//! Vertices are the indices `0..n`. Edges are stored as `(u, v)` pairs with
//! `u < v`, sorted lexicographically; the position of an edge in that list is
//! its index, and the index order is the edge ordering every sign convention in
//! the crate refers to.

pub mod families;
pub mod io;

use std::fmt;

use crate::error::{Error, Result};

/// Largest edge count representable by an [`EdgeSubset`].
pub const MAX_EDGES: usize = 64;

/// A simple graph on vertices `0..n` with a base vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    base: usize,
}

/// Result of normalizing a raw edge list.
///
/// A loop is not an error: every cohomology group of a graph with a loop
/// vanishes, so callers short-circuit to an empty table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalized {
    Simple(Graph),
    Loop,
}

impl Normalized {
    pub fn simple(self) -> Option<Graph> {
        match self {
            Normalized::Simple(g) => Some(g),
            Normalized::Loop => None,
        }
    }

    pub fn is_loop(&self) -> bool {
        matches!(self, Normalized::Loop)
    }
}

/// Collapses duplicate pairs, orients every pair as `(min, max)` and sorts.
pub fn normalize<I>(raw_edges: I, n: usize, base: usize) -> Result<Normalized>
where
    I: IntoIterator<Item = (usize, usize)>,
{
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if base >= n {
        return Err(Error::VertexOutOfRange { vertex: base, n });
    }
    let mut edges = Vec::new();
    let mut has_loop = false;
    for (u, v) in raw_edges {
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            has_loop = true;
        } else {
            edges.push((u.min(v), u.max(v)));
        }
    }
    if has_loop {
        return Ok(Normalized::Loop);
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(Normalized::Simple(Graph { n, edges, base }))
}

/// A set of edge indices, the underlying state of an enhanced state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct EdgeSubset(pub u64);

impl EdgeSubset {
    pub const EMPTY: EdgeSubset = EdgeSubset(0);

    /// All of the first `count` edges.
    pub fn full(count: usize) -> EdgeSubset {
        assert!(count <= MAX_EDGES);
        if count == MAX_EDGES {
            EdgeSubset(u64::MAX)
        } else {
            EdgeSubset((1u64 << count) - 1)
        }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> EdgeSubset {
        EdgeSubset(indices.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> EdgeSubset {
        EdgeSubset(self.0 | 1 << e)
    }

    pub fn without(self, e: usize) -> EdgeSubset {
        EdgeSubset(self.0 & !(1 << e))
    }

    /// Number of edges; the cohomological degree `i` of the state.
    pub fn dimension(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Number of members with index strictly below `e`.
    pub fn count_below(self, e: usize) -> usize {
        (self.0 & ((1u64 << e) - 1)).count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let e = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(e)
            }
        })
    }
}

/// Connected components of a spanning subgraph.
///
/// Components are numbered `0..count` in increasing order of their minimal
/// vertex, so `label[0] == 0` always.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabels {
    pub label: Vec<usize>,
    pub count: usize,
}

impl ComponentLabels {
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.count];
        for (v, &c) in self.label.iter().enumerate() {
            blocks[c].push(v);
        }
        blocks
    }
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

impl Graph {
    /// Builds a simple graph, rejecting loops.
    pub fn new<I>(n: usize, edges: I, base: usize) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        normalize(edges, n, base)?
            .simple()
            .ok_or_else(|| Error::Precondition("graph has a loop".into()))
    }

    /// The one-vertex graph.
    pub fn single_vertex() -> Graph {
        Graph { n: 1, edges: Vec::new(), base: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> Result<(usize, usize)> {
        self.edges
            .get(e)
            .copied()
            .ok_or(Error::EdgeOutOfRange { index: e, count: self.edges.len() })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn with_base(&self, base: usize) -> Result<Graph> {
        if base >= self.n {
            return Err(Error::VertexOutOfRange { vertex: base, n: self.n });
        }
        Ok(Graph { base, ..self.clone() })
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.edges.len())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    /// Component labels of the spanning subgraph with edge set `s`.
    pub fn component_labels(&self, s: EdgeSubset) -> ComponentLabels {
        let mut parent: Vec<usize> = (0..self.n).collect();
        for e in s.iter() {
            let (u, v) = self.edges[e];
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru.max(rv)] = ru.min(rv);
            }
        }
        let mut label = vec![usize::MAX; self.n];
        let mut count = 0;
        for v in 0..self.n {
            let r = find(&mut parent, v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[v] = label[r];
        }
        ComponentLabels { label, count }
    }

    /// Connected components of `(V, s)`, each sorted, listed by minimal vertex.
    pub fn components(&self, s: EdgeSubset) -> Vec<Vec<usize>> {
        self.component_labels(s).blocks()
    }

    pub fn component_count(&self) -> usize {
        self.component_labels(self.all_edges()).count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn is_bridge(&self, e: usize) -> Result<bool> {
        self.edge(e)?;
        let all = self.all_edges();
        Ok(self.component_labels(all.without(e)).count > self.component_labels(all).count)
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![None; self.n];
        for start in 0..self.n {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for w in self.neighbors(v) {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Edges with an endpoint of degree one.
    pub fn pendant_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| {
                let (u, v) = self.edges[e];
                self.degree(u) == 1 || self.degree(v) == 1
            })
            .collect()
    }

    pub fn delete(&self, e: usize) -> Result<Graph> {
        self.edge(e)?;
        let mut edges = self.edges.clone();
        edges.remove(e);
        Ok(Graph { n: self.n, edges, base: self.base })
    }

    /// Identifies the endpoints of edge `e`.
    ///
    /// The merged vertex keeps the smaller label, higher labels shift down by
    /// one, and parallel edges created by the merge are collapsed.
    pub fn contract(&self, e: usize) -> Result<Graph> {
        let (u, v) = self.edge(e)?;
        let relabel = |w: usize| match w.cmp(&v) {
            std::cmp::Ordering::Less => w,
            std::cmp::Ordering::Equal => u,
            std::cmp::Ordering::Greater => w - 1,
        };
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(f, _)| f != e)
            .map(|(_, &(a, b))| (relabel(a), relabel(b)));
        match normalize(edges, self.n - 1, relabel(self.base))? {
            Normalized::Simple(g) => Ok(g),
            Normalized::Loop => Err(Error::Internal("contraction produced a loop".into())),
        }
    }

    /// Applies a vertex relabeling: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::Precondition(format!(
                "permutation has length {}, graph has {} vertices",
                perm.len(),
                self.n
            )));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Precondition("not a permutation".into()));
            }
        }
        Graph::new(
            self.n,
            self.edges.iter().map(|&(a, b)| (perm[a], perm[b])),
            perm[self.base],
        )
    }

    /// Splits the graph into its connected components.
    ///
    /// Each component is relabeled to `0..size` preserving vertex order. The
    /// component holding the base vertex comes first and keeps the base; the
    /// others use their minimal vertex as base.
    pub fn split_components(&self) -> Vec<Graph> {
        let labels = self.component_labels(self.all_edges());
        let blocks = labels.blocks();
        let base_block = labels.label[self.base];
        let mut order: Vec<usize> = (0..blocks.len()).collect();
        order.sort_by_key(|&c| (c != base_block, c));
        order
            .into_iter()
            .map(|c| {
                let block = &blocks[c];
                let pos = |w: usize| block.binary_search(&w).unwrap();
                let edges = self
                    .edges
                    .iter()
                    .filter(|&&(a, _)| labels.label[a] == c)
                    .map(|&(a, b)| (pos(a), pos(b)));
                let base = if c == base_block { pos(self.base) } else { 0 };
                Graph::new(block.len(), edges, base).expect("component of a simple graph")
            })
            .collect()
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n {} base {}", self.n, self.base)?;
        for (u, v) in &self.edges {
            write!(f, "; {} {}", u, v)?;
        }
        Ok(())
    }
}

/// One-vertex union: glues the base of `g2` onto the base of `g1`.
///
/// Vertices of `g1` keep their labels; the non-base vertices of `g2` follow in
/// their original order. The glued vertex is the base of the result.
pub fn vertex_union(g1: &Graph, g2: &Graph) -> Graph {
    let map2 = |w: usize| match w.cmp(&g2.base) {
        std::cmp::Ordering::Less => g1.n + w,
        std::cmp::Ordering::Equal => g1.base,
        std::cmp::Ordering::Greater => g1.n + w - 1,
    };
    let edges = g1
        .edges
        .iter()
        .copied()
        .chain(g2.edges.iter().map(|&(a, b)| (map2(a), map2(b))));
    Graph::new(g1.n + g2.n - 1, edges, g1.base).expect("union of simple graphs is simple")
}

/// Glues `e1` of `g1` to `e2` of `g2` in both orientations and removes the
/// glued edge.
///
/// With `e1 = (a, b)` and `e2 = (c, d)` (both `min, max`), the first graph
/// identifies `a~c, b~d` and the second `a~d, b~c`. Vertices of `g1` keep their
/// labels and the base of both results is `a`.
pub fn whitney_twist(g1: &Graph, e1: usize, g2: &Graph, e2: usize) -> Result<(Graph, Graph)> {
    let (a, b) = g1.edge(e1)?;
    let (c, d) = g2.edge(e2)?;
    let glue = |onto_c: usize, onto_d: usize| -> Result<Graph> {
        let mut map = vec![0; g2.n];
        let mut next = g1.n;
        for (w, slot) in map.iter_mut().enumerate() {
            *slot = if w == c {
                onto_c
            } else if w == d {
                onto_d
            } else {
                next += 1;
                next - 1
            };
        }
        let edges = g1
            .edges
            .iter()
            .enumerate()
            .filter(|&(f, _)| f != e1)
            .map(|(_, &p)| p)
            .chain(
                g2.edges
                    .iter()
                    .enumerate()
                    .filter(|&(f, _)| f != e2)
                    .map(|(_, &(x, y))| (map[x], map[y])),
            );
        match normalize(edges, g1.n + g2.n - 2, a)? {
            Normalized::Simple(g) => Ok(g),
            Normalized::Loop => Err(Error::Internal("gluing produced a loop".into())),
        }
    };
    Ok((glue(a, b)?, glue(b, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, cycle, path};

    fn triangle() -> Graph {
        cycle(3)
    }

    #[test]
    fn normalize_collapses_and_sorts() {
        let g = normalize([(0, 1), (1, 0), (0, 1)], 2, 0).unwrap().simple().unwrap();
        assert_eq!(g.edges(), &[(0, 1)]);
        let g = normalize([(2, 1), (0, 1)], 3, 0).unwrap().simple().unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn normalize_flags_loops() {
        assert!(normalize([(0, 0)], 1, 0).unwrap().is_loop());
        assert!(normalize([(0, 1), (1, 1)], 2, 0).unwrap().is_loop());
    }

    #[test]
    fn normalize_rejects_out_of_range() {
        assert_eq!(
            normalize([(0, 3)], 3, 0),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
        assert!(normalize([(0, 1)], 2, 2).is_err());
        assert_eq!(normalize(Vec::new(), 0, 0), Err(Error::EmptyGraph));
    }

    #[test]
    fn components_of_triangle_states() {
        let g = triangle();
        assert_eq!(g.components(EdgeSubset::EMPTY), vec![vec![0], vec![1], vec![2]]);
        let e01 = g.edge_index(0, 1).unwrap();
        assert_eq!(
            g.components(EdgeSubset::from_indices([e01])),
            vec![vec![0, 1], vec![2]]
        );
        assert_eq!(g.components(g.all_edges()), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn components_ordered_by_min_vertex() {
        let g = Graph::new(4, [(1, 3), (0, 2)], 0).unwrap();
        assert_eq!(g.components(g.all_edges()), vec![vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn contract_and_delete_triangle() {
        let g = triangle();
        let e = g.edge_index(0, 1).unwrap();
        let c = g.contract(e).unwrap();
        assert_eq!((c.vertex_count(), c.edges()), (2, &[(0, 1)][..]));
        let d = g.delete(e).unwrap();
        assert_eq!(d.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn contract_path() {
        let p = path(3);
        let c = p.contract(p.edge_index(0, 1).unwrap()).unwrap();
        assert_eq!((c.vertex_count(), c.edges()), (2, &[(0, 1)][..]));
    }

    #[test]
    fn contract_maps_base() {
        let g = Graph::new(4, [(0, 1), (1, 2), (2, 3)], 2).unwrap();
        let c = g.contract(g.edge_index(1, 2).unwrap()).unwrap();
        assert_eq!(c.base(), 1);
        let c = g.contract(g.edge_index(0, 1).unwrap()).unwrap();
        assert_eq!(c.base(), 1);
        let g = g.with_base(3).unwrap();
        let c = g.contract(g.edge_index(2, 3).unwrap()).unwrap();
        assert_eq!(c.base(), 2);
    }

    #[test]
    fn bridges_and_bipartiteness() {
        let t = triangle();
        for e in 0..3 {
            assert!(!t.is_bridge(e).unwrap());
        }
        let p = path(3);
        for e in 0..2 {
            assert!(p.is_bridge(e).unwrap());
        }
        assert!(!cycle(5).is_bipartite());
        assert!(cycle(4).is_bipartite());
        assert!(t.is_bridge(7).is_err());
    }

    #[test]
    fn vertex_unions() {
        let one = Graph::single_vertex();
        assert_eq!(vertex_union(&one, &one), one);
        let edge = path(2);
        let u = vertex_union(&edge, &edge);
        assert_eq!(u.vertex_count(), 3);
        assert!(u.is_tree());
        assert_eq!(u.degree(u.base()), 2);
        let bowtie = vertex_union(&triangle(), &triangle());
        assert_eq!((bowtie.vertex_count(), bowtie.edge_count()), (5, 6));
        assert_eq!(bowtie.degree(bowtie.base()), 4);
    }

    #[test]
    fn whitney_of_triangles_is_square() {
        let t = triangle();
        for e1 in 0..3 {
            for e2 in 0..3 {
                let (a, b) = whitney_twist(&t, e1, &t, e2).unwrap();
                for g in [a, b] {
                    assert_eq!((g.vertex_count(), g.edge_count()), (4, 4));
                    assert!(g.is_connected());
                    assert!((0..4).all(|v| g.degree(v) == 2));
                }
            }
        }
    }

    #[test]
    fn whitney_of_square_and_triangle_is_pentagon() {
        let (c4, t) = (cycle(4), triangle());
        for e1 in 0..4 {
            for e2 in 0..3 {
                let (a, b) = whitney_twist(&c4, e1, &t, e2).unwrap();
                for g in [a, b] {
                    assert_eq!((g.vertex_count(), g.edge_count()), (5, 5));
                    assert!(g.is_connected() && (0..5).all(|v| g.degree(v) == 2));
                }
            }
        }
    }

    #[test]
    fn whitney_counts() {
        let (k4, c4) = (complete(4), cycle(4));
        for e1 in 0..6 {
            for e2 in 0..4 {
                let (a, b) = whitney_twist(&k4, e1, &c4, e2).unwrap();
                for g in [a, b] {
                    assert_eq!(g.vertex_count(), 4 + 4 - 2);
                    assert_eq!(g.edge_count(), 6 + 4 - 2);
                    assert_eq!(g.base(), k4.edge(e1).unwrap().0);
                }
            }
        }
    }

    #[test]
    fn split_components_keeps_base_first() {
        let g = Graph::new(5, [(0, 3), (1, 2), (2, 4)], 4).unwrap();
        let parts = g.split_components();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].edges(), &[(0, 1), (1, 2)]);
        assert_eq!(parts[0].base(), 2);
        assert_eq!(parts[1].edges(), &[(0, 1)]);
    }

    #[test]
    fn edge_subset_bits() {
        let s = EdgeSubset::from_indices([0, 2, 5]);
        assert_eq!(s.dimension(), 3);
        assert_eq!(s.count_below(5), 2);
        assert_eq!(s.count_below(0), 0);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 2, 5]);
        assert!(s.with(1).contains(1) && !s.without(2).contains(2));
        assert_eq!(EdgeSubset::full(64).dimension(), 64);
    }
}
