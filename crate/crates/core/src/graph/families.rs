//! Named graph families and exhaustive generators. Every graph built here has
//! base vertex 0.

use std::collections::BTreeMap;

use super::Graph;

pub fn edgeless(n: usize) -> Graph {
    Graph::new(n, std::iter::empty(), 0).expect("n >= 1")
}

/// Path on `n` vertices `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (v - 1, v)), 0).expect("n >= 1")
}

/// Cycle on `n >= 3` vertices.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a simple cycle needs at least 3 vertices");
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)), 0).expect("valid cycle")
}

pub fn complete(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges, 0).expect("n >= 1")
}

/// `K_n` with the edge `(n-2, n-1)` removed.
pub fn complete_minus_edge(n: usize) -> Graph {
    assert!(n >= 2);
    let k = complete(n);
    k.delete(k.edge_index(n - 2, n - 1).unwrap()).unwrap()
}

/// Star on `n` vertices with centre 0.
pub fn star(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|v| (0, v)), 0).expect("n >= 1")
}

/// Two triangles sharing vertex 0.
pub fn bowtie() -> Graph {
    Graph::new(5, [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)], 0).unwrap()
}

/// Two hub vertices 0 and 1 joined by three internally disjoint paths with
/// the given edge counts. At most one length may be 1.
pub fn theta(lengths: [usize; 3]) -> Graph {
    assert!(lengths.iter().all(|&l| l >= 1));
    assert!(lengths.iter().filter(|&&l| l == 1).count() <= 1);
    let mut n = 2;
    let mut edges = Vec::new();
    for len in lengths {
        let mut prev = 0;
        for _ in 1..len {
            edges.push((prev, n));
            prev = n;
            n += 1;
        }
        edges.push((prev, 1));
    }
    Graph::new(n, edges, 0).unwrap()
}

/// `g` with a pendant path of `len` extra vertices hanging off vertex `at`.
pub fn with_tail(g: &Graph, at: usize, len: usize) -> Graph {
    let n = g.vertex_count();
    let mut edges = g.edges().to_vec();
    let mut prev = at;
    for v in n..n + len {
        edges.push((prev, v));
        prev = v;
    }
    Graph::new(n + len, edges, g.base()).unwrap()
}

fn tree_code(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut children: Vec<String> = adj[v]
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| tree_code(adj, w, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Canonical string of a tree: rooted encoding taken at each centre, minimum.
fn tree_canonical(g: &Graph) -> String {
    let n = g.vertex_count();
    if n == 1 {
        return "()".into();
    }
    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &w in &adj[leaf] {
                if degree[w] > 0 {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    layer
        .iter()
        .map(|&c| tree_code(&adj, c, usize::MAX))
        .min()
        .unwrap()
}

/// All trees on `n` vertices up to isomorphism.
pub fn unlabeled_trees(n: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let mut level = vec![Graph::single_vertex()];
    for size in 2..=n {
        let mut seen = BTreeMap::new();
        for t in &level {
            for v in 0..t.vertex_count() {
                let grown = with_tail(t, v, 1);
                debug_assert_eq!(grown.vertex_count(), size);
                seen.entry(tree_canonical(&grown)).or_insert(grown);
            }
        }
        level = seen.into_values().collect();
    }
    level
}

/// Every connected labeled simple graph on exactly `n` vertices with at most
/// `max_e` edges, in increasing order of the edge bitmask over the pairs of
/// `K_n` listed lexicographically.
pub fn connected_labeled_graphs(n: usize, max_e: usize) -> Vec<Graph> {
    assert!(n >= 1);
    let pairs: Vec<(usize, usize)> = complete(n).edges().to_vec();
    assert!(pairs.len() < 32, "exhaustive enumeration limited to n <= 8");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        let e = mask.count_ones() as usize;
        if e + 1 < n || e > max_e {
            continue;
        }
        let edges = (0..pairs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| pairs[i]);
        let g = Graph::new(n, edges, 0).unwrap();
        if g.is_connected() {
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_counts_match_known_sequence() {
        let counts: Vec<usize> = (1..=9).map(|n| unlabeled_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23, 47]);
        assert!(unlabeled_trees(7).iter().all(Graph::is_tree));
    }

    #[test]
    fn labeled_connected_counts() {
        // OEIS A001187
        let counts: Vec<usize> = (1..=5)
            .map(|n| connected_labeled_graphs(n, usize::MAX).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
        assert_eq!(connected_labeled_graphs(4, 3).len(), 16);
    }

    #[test]
    fn family_shapes() {
        assert_eq!(theta([1, 2, 2]).edge_count(), 5);
        assert_eq!(theta([2, 2, 3]).vertex_count(), 6);
        assert_eq!(complete_minus_edge(4).edge_count(), 5);
        assert_eq!(star(4).degree(0), 3);
        assert!(with_tail(&cycle(3), 2, 2).pendant_edges().len() == 1);
    }
}
