use ufs::generators::{generate, GenSpec, GraphKind};
use ufs::sequential_components;

#[test]
fn known_membership_matches_oracle() {
    for seed in 0..5 {
        for spec in [GenSpec::chain(777, seed), GenSpec::clique_clusters(40, 9, 15, seed)] {
            let (edges, truth) = generate(&spec).unwrap();
            let oracle = sequential_components(&edges);
            if let Some(m) = &truth.membership {
                assert_eq!(m, &oracle, "{spec:?}");
            }
            assert_eq!(truth.component_count, Some(oracle.component_count()), "{spec:?}");
        }
    }
}

#[test]
fn component_counts_match_oracle_when_reported() {
    for kind in GraphKind::ALL {
        for seed in 0..4 {
            let spec = match kind {
                GraphKind::Sparse => GenSpec::sparse(2000, 1500, seed),
                GraphKind::CliqueClusters => GenSpec::clique_clusters(30, 16, 10, seed),
                GraphKind::Chain => GenSpec::chain(3000, seed),
                GraphKind::SkewedLcc => GenSpec::skewed_lcc(8000, 12, 2.0, seed),
            };
            let (edges, truth) = generate(&spec).unwrap();
            let oracle = sequential_components(&edges);
            if let Some(c) = truth.component_count {
                assert_eq!(c, oracle.component_count(), "{kind} seed {seed}");
            }
            let (again, _) = generate(&spec).unwrap();
            assert_eq!(edges, again);
        }
    }
}

#[test]
fn skewed_graph_has_large_component() {
    let (edges, _) = generate(&GenSpec::skewed_lcc(20_000, 16, 2.0, 9)).unwrap();
    let labels = sequential_components(&edges);
    assert!(labels.largest_component_size() > 5000);
}
