//! Randomised invariants over the graph, encoding, and canonicalisation
//! layers, plus solver laws that are cheap enough to sample broadly.

use copnum::graph6;
use copnum::solver::{
    cop_number, copwin_ordering, is_copwin_dismantlable, safe_neighborhood,
};
use copnum::{canonical_form, is_isomorphic, Graph, VertexSet};
use proptest::prelude::*;

/// Build a graph from one bit per unordered pair, pairs ordered by the
/// larger endpoint then the smaller (the graph6 column order).
fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bits[idx] {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2)
            .prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn arb_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", Graph::is_connected)
}

/// A graph together with a uniformly shuffled relabelling of its vertices.
fn arb_relabelled(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        let perm = Just((0..n).collect::<Vec<usize>>()).prop_shuffle();
        (Just(g), perm)
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .map(|(u, v)| (perm[u], perm[v]))
        .collect();
    Graph::from_edges(g.order(), &edges)
}

/// A connected graph with 1..=3 cop positions and a robber position.
fn arb_position(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>, usize)> {
    arb_connected_graph(max_n).prop_flat_map(|g| {
        let n = g.order();
        let cops = proptest::collection::vec(0..n, 1..=3);
        let robber = 0..n;
        (Just(g), cops, robber)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trips_any_graph(g in arb_graph(12)) {
        let text = graph6::emit(&g);
        prop_assert_eq!(graph6::parse(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labelling((g, perm) in arb_relabelled(9)) {
        let h = relabel(&g, &perm);
        prop_assert_eq!(canonical_form(&g), canonical_form(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn canonical_form_is_a_fixpoint(g in arb_graph(9)) {
        let form = canonical_form(&g);
        let relabelled = form.to_graph();
        let text = graph6::emit(&relabelled);
        prop_assert_eq!(text.as_str(), form.as_str());
        prop_assert_eq!(canonical_form(&relabelled), form);
    }

    #[test]
    fn girth_exists_iff_some_component_has_a_cycle(g in arb_graph(10)) {
        // Forests are exactly the graphs with m = n - (number of components).
        let forest = g.size() == g.order() - g.component_count();
        prop_assert_eq!(g.girth().is_none(), forest);
    }

    #[test]
    fn safe_neighbourhood_is_disjoint_from_cop_territory((g, cops, robber) in arb_position(9)) {
        let mut territory = VertexSet::EMPTY;
        for &c in &cops {
            territory = territory.union(g.closed_neighborhood(c));
        }
        let s = safe_neighborhood(&g, &cops, robber);
        prop_assert!(s.intersection(territory).is_empty());
        prop_assert!(s.is_subset_of(g.all_vertices()));
        // Away from the cops, the robber stands inside its own refuge.
        if !territory.contains(robber) {
            prop_assert!(s.contains(robber));
        }
    }

    #[test]
    fn dismantlable_exactly_when_one_cop_suffices(g in arb_connected_graph(8)) {
        let by_order = is_copwin_dismantlable(&g);
        prop_assert_eq!(by_order, cop_number(&g).unwrap() == 1);
        match copwin_ordering(&g) {
            Some(order) => {
                prop_assert!(by_order);
                prop_assert_eq!(order.len(), g.order());
                let mut seen = vec![false; g.order()];
                for v in order {
                    prop_assert!(!seen[v]);
                    seen[v] = true;
                }
            }
            None => prop_assert!(!by_order),
        }
    }
}
