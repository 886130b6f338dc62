use deltacomp::bounds::{check_min_degree_theorem, ng_report, ReportOptions};
use deltacomp::connectivity::{edge_connectivity, vertex_connectivity};
use deltacomp::enumerate::canonical_code;
use deltacomp::graph::pair_from_index;
use deltacomp::{complement_commutes, delta_complement, from_graph6, to_graph6, Graph};
use proptest::prelude::*;

fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let edges: Vec<(usize, usize)> = bits
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| pair_from_index(i))
        .collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

fn graphs(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n, 0.0..=1.0f64).prop_flat_map(|(n, p)| {
        prop::collection::vec(prop::bool::weighted(p), n * (n - 1) / 2).prop_map(move |bits| graph_from_bits(n, &bits))
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    let edges: Vec<(usize, usize)> = g.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
    Graph::from_edge_list(g.n(), &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn complement_degrees_sum_to_n_minus_one(g in graphs(70)) {
        let c = g.complement();
        for v in 0..g.n() {
            prop_assert_eq!(g.degree(v) + c.degree(v), g.n() - 1);
        }
    }

    #[test]
    fn handshake(g in graphs(70)) {
        prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
        prop_assert_eq!(g.edges().len(), g.edge_count());
    }

    #[test]
    fn graph6_round_trip(g in graphs(90)) {
        let text = to_graph6(&g).unwrap();
        prop_assert!(text.bytes().all(|b| (63..=126).contains(&b)));
        prop_assert_eq!(from_graph6(&text).unwrap(), g);
    }

    #[test]
    fn delta_complement_flips_only_inside_degree_classes(g in graphs(70)) {
        let d = delta_complement(&g).unwrap();
        for u in 0..g.n() {
            prop_assert!(!d.has_edge(u, u));
            for v in u + 1..g.n() {
                let same = g.degree(u) == g.degree(v);
                prop_assert_eq!(d.has_edge(u, v), g.has_edge(u, v) != same);
            }
        }
    }

    #[test]
    fn complement_commutes_with_delta_complement(g in graphs(70)) {
        prop_assert!(complement_commutes(&g).unwrap());
    }

    #[test]
    fn whitney_chain_and_witnesses(g in graphs(24)) {
        for h in [g.clone(), delta_complement(&g).unwrap()] {
            let k = vertex_connectivity(&h).unwrap();
            let l = edge_connectivity(&h).unwrap();
            let d = h.min_degree().unwrap();
            prop_assert!(k.value <= l.value && l.value <= d);
            if !k.witness.is_empty() {
                prop_assert_eq!(k.witness.len(), k.value);
                prop_assert!(!h.without_vertices(&k.witness).is_connected().unwrap());
            }
            if !l.witness.is_empty() {
                prop_assert_eq!(l.witness.len(), l.value);
                prop_assert!(!h.without_edges(&l.witness).is_connected().unwrap());
            }
        }
    }

    #[test]
    fn every_bound_row_holds(g in graphs(20)) {
        let report = ng_report(&g, ReportOptions { classical: true, chromatic: g.n() <= 12 }).unwrap();
        for row in &report.rows {
            prop_assert!(row.holds(), "{} fails on {}: {} vs {}", row.anchor, report.graph6, row.left, row.right);
        }
        prop_assert!(check_min_degree_theorem(&g).unwrap());
    }

    #[test]
    fn canonical_code_ignores_labels(
        (g, perm) in graphs(11).prop_flat_map(|g| {
            let n = g.n();
            (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        prop_assert_eq!(canonical_code(&g).unwrap(), canonical_code(&relabel(&g, &perm)).unwrap());
    }
}
