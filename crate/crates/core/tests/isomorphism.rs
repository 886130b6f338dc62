//! Class counts from the canonical-form generator against a pairwise
//! isomorphism test that tries every permutation.

use deltacomp::enumerate::{canonical_code, labeled_graphs, nonisomorphic_graphs};
use deltacomp::Graph;
use itertools::Itertools;

fn isomorphic(a: &Graph, b: &Graph) -> bool {
    let n = a.n();
    if n != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let mut da = a.degrees();
    let mut db = b.degrees();
    da.sort_unstable();
    db.sort_unstable();
    if da != db {
        return false;
    }
    (0..n)
        .permutations(n)
        .any(|p| a.edges().iter().all(|&(u, v)| b.has_edge(p[u], p[v])))
}

fn pairwise_classes(n: usize) -> Vec<Graph> {
    let mut reps: Vec<Graph> = Vec::new();
    for g in labeled_graphs(n).unwrap() {
        if !reps.iter().any(|r| isomorphic(r, &g)) {
            reps.push(g);
        }
    }
    reps
}

#[test]
fn pairwise_dedup_matches_generator() {
    for (n, expected) in [(1, 1), (2, 2), (3, 4), (4, 11), (5, 34)] {
        let reps = pairwise_classes(n);
        assert_eq!(reps.len(), expected, "n = {n}");
        let generated = nonisomorphic_graphs(n).unwrap();
        assert_eq!(generated.len(), expected, "n = {n}");
        // Each generated graph is isomorphic to exactly one pairwise representative.
        for g in &generated {
            assert_eq!(reps.iter().filter(|r| isomorphic(r, g)).count(), 1);
        }
    }
}

#[test]
fn canonical_code_separates_classes() {
    let reps = pairwise_classes(5);
    let codes: std::collections::BTreeSet<u64> = reps.iter().map(|g| canonical_code(g).unwrap()).collect();
    assert_eq!(codes.len(), reps.len());
}

#[test]
fn eight_vertex_class_count() {
    let classes = nonisomorphic_graphs(8).unwrap();
    assert_eq!(classes.len(), 12346);
    let total_edges: usize = classes.iter().map(Graph::edge_count).sum();
    // Complementation permutes the classes, so the mean edge count is 14.
    assert_eq!(total_edges, 14 * classes.len());
}
