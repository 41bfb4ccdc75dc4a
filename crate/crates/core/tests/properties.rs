use proptest::prelude::*;

use chroma::chromatic::{chromatic_by_interpolation, chromatic_polynomial, whitney_rank_polynomial};
use chroma::complex::Theory;
use chroma::graph::families::complete;
use chroma::graph::Graph;
use chroma::homology::betti_table;

fn graph_on(n: usize, mask: u32, base: usize) -> Graph {
    let pairs = complete(n).edges().to_vec();
    let edges = pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e);
    Graph::new(n, edges, base % n).unwrap()
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u32..(1 << pairs), 0..n).prop_map(|(n, mask, base)| graph_on(n, mask, base))
    })
}

fn disjoint_union(g1: &Graph, g2: &Graph) -> Graph {
    let n1 = g1.vertex_count();
    let edges = g1.edges().iter().copied().chain(g2.edges().iter().map(|&(a, b)| (a + n1, b + n1)));
    Graph::new(n1 + g2.vertex_count(), edges, g1.base()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn input_edge_order_is_irrelevant(g in arb_graph(5), seed in any::<u64>()) {
        let mut edges = g.edges().to_vec();
        let len = edges.len();
        for k in (1..len).rev() {
            edges.swap(k, (seed.rotate_left(k as u32) as usize) % (k + 1));
        }
        let reordered = Graph::new(g.vertex_count(), edges, g.base()).unwrap();
        prop_assert_eq!(
            betti_table(&reordered, Theory::Reduced).unwrap(),
            betti_table(&g, Theory::Reduced).unwrap()
        );
    }

    #[test]
    fn relabeling_keeps_betti_numbers(
        (g, perm) in arb_graph(5).prop_flat_map(|g| {
            let n = g.vertex_count();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let h = g.relabel(&perm).unwrap();
        for theory in [Theory::Reduced, Theory::Standard] {
            prop_assert_eq!(betti_table(&h, theory).unwrap(), betti_table(&g, theory).unwrap());
        }
    }

    #[test]
    fn chromatic_oracles_agree(g in arb_graph(6)) {
        let p = chromatic_polynomial(&g);
        prop_assert_eq!(&chromatic_by_interpolation(&g).unwrap(), &p);
        prop_assert_eq!(&whitney_rank_polynomial(&g).unwrap(), &p);
    }

    #[test]
    fn disjoint_union_is_a_product(g1 in arb_graph(3), g2 in arb_graph(3)) {
        let union = disjoint_union(&g1, &g2);
        let reduced = betti_table(&union, Theory::Reduced).unwrap().poincare();
        let standard = betti_table(&union, Theory::Standard).unwrap().poincare();
        let r1 = betti_table(&g1, Theory::Reduced).unwrap().poincare();
        let s1 = betti_table(&g1, Theory::Standard).unwrap().poincare();
        let s2 = betti_table(&g2, Theory::Standard).unwrap().poincare();
        prop_assert_eq!(reduced, &r1 * &s2);
        prop_assert_eq!(standard, &s1 * &s2);
    }

    #[test]
    fn standard_euler_characteristic(g in arb_graph(5)) {
        let chi = betti_table(&g, Theory::Standard).unwrap().euler_characteristic();
        prop_assert_eq!(chi, chromatic_polynomial(&g).shift(1));
    }
}
