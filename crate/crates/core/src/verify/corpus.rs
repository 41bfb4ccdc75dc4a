use serde::Serialize;

use crate::graph::families::{
    bowtie, complete, complete_minus_edge, connected_labeled_graphs, cycle, star, theta,
    unlabeled_trees, with_tail,
};
use crate::graph::Graph;

/// Vertex count up to which every labeled connected graph is enumerated.
pub const LABELED_LIMIT: usize = 6;

/// A graph with a stable human-readable identifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusGraph {
    pub id: String,
    #[serde(serialize_with = "crate::verify::serialize_display")]
    pub graph: Graph,
}

impl CorpusGraph {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        CorpusGraph { id: id.into(), graph }
    }
}

/// Connected simple graphs to run checks over.
///
/// Every labeled connected graph with at most `min(max_n, 6)` vertices and
/// `max_e` edges, followed by named families (trees, cycles, complete graphs,
/// bowtie, theta graphs, `K_n - e`, cycles with tails) within the same bounds.
/// Isomorphic copies are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GraphCorpus {
    pub max_n: usize,
    pub max_e: usize,
    pub labeled: bool,
    pub named: bool,
}

impl Default for GraphCorpus {
    fn default() -> Self {
        GraphCorpus { max_n: 7, max_e: 12, labeled: true, named: true }
    }
}

impl GraphCorpus {
    pub fn new(max_n: usize, max_e: usize) -> Self {
        GraphCorpus { max_n, max_e, ..Default::default() }
    }

    /// Only the exhaustive labeled part, with no edge bound.
    pub fn labeled(max_n: usize) -> Self {
        GraphCorpus { max_n, max_e: usize::MAX, labeled: true, named: false }
    }

    pub fn graphs(&self) -> Vec<CorpusGraph> {
        let mut out = Vec::new();
        if self.labeled {
            for n in 1..=self.max_n.min(LABELED_LIMIT) {
                for (k, g) in connected_labeled_graphs(n, self.max_e).into_iter().enumerate() {
                    out.push(CorpusGraph::new(format!("labeled-n{n}-{k}"), g));
                }
            }
        }
        if self.named {
            out.extend(self.named_graphs());
        }
        out
    }

    fn named_graphs(&self) -> Vec<CorpusGraph> {
        let mut named = Vec::new();
        for n in 1..=self.max_n {
            for (k, t) in unlabeled_trees(n).into_iter().enumerate() {
                named.push(CorpusGraph::new(format!("tree-n{n}-{k}"), t));
            }
        }
        for n in 3..=self.max_n {
            named.push(CorpusGraph::new(format!("C_{n}"), cycle(n)));
            named.push(CorpusGraph::new(format!("K_{n}"), complete(n)));
            named.push(CorpusGraph::new(format!("K_{n}-e"), complete_minus_edge(n)));
            named.push(CorpusGraph::new(format!("S_{n}"), star(n)));
            named.push(CorpusGraph::new(format!("C_{n}+tail"), with_tail(&cycle(n), 0, 1)));
        }
        named.push(CorpusGraph::new("bowtie", bowtie()));
        for lengths in [[1, 2, 2], [2, 2, 2], [1, 2, 3], [2, 2, 3], [1, 3, 3], [2, 3, 3]] {
            let name = format!("theta-{}-{}-{}", lengths[0], lengths[1], lengths[2]);
            named.push(CorpusGraph::new(name, theta(lengths)));
        }
        named
            .into_iter()
            .filter(|c| c.graph.vertex_count() <= self.max_n && c.graph.edge_count() <= self.max_e)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labeled_counts() {
        assert_eq!(GraphCorpus::labeled(4).graphs().len(), 1 + 1 + 4 + 38);
        assert!(GraphCorpus::labeled(0).graphs().is_empty());
    }

    #[test]
    fn bounds_respected() {
        let corpus = GraphCorpus::new(5, 6).graphs();
        assert!(corpus.iter().all(|c| c.graph.vertex_count() <= 5 && c.graph.edge_count() <= 6));
        assert!(corpus.iter().all(|c| c.graph.is_connected()));
        assert!(corpus.iter().any(|c| c.id == "bowtie"));
        assert!(!corpus.iter().any(|c| c.id == "K_5"));
    }
}
