use std::collections::BTreeSet;

use rado_core::edge_order::{
    decompose_component, detect_bicycle, has_bad_valid_order, recognize_structure, verify_decomposition, Outcome,
};
use rado_core::generate::{connected_family, random_connected};
use rado_core::Hypergraph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn check(h: &Hypergraph) {
    let oracle = has_bad_valid_order(h, 0, 10).unwrap();
    let found = detect_bicycle(h, 0);
    assert_eq!(found.is_some(), oracle.is_some(), "detector and oracle disagree on {:?}: {found:?} vs {oracle:?}", h.edges());
    if let Some(w) = &found {
        let ids: Vec<usize> = w.edges.iter().map(|e| h.edge_id(e).unwrap()).collect();
        assert!(recognize_structure(h, &ids, w.kind));
    }
    match decompose_component(h, 0).unwrap() {
        Outcome::Bicycle(w) => assert!(found.is_some() && w.kind.is_bicycle()),
        Outcome::Decomposed(d) => {
            assert!(found.is_none());
            assert!(verify_decomposition(h, 0, &d), "bad decomposition {d:?} of {:?}", h.edges());
        }
    }
}

#[test]
fn detector_matches_oracle_on_all_small_shapes() {
    let family = connected_family(3, 4, 9);
    assert!(family.len() > 100);
    for h in &family {
        check(h);
    }
}

#[test]
fn detector_matches_oracle_on_random_sparse() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut done = 0;
    while done < 1000 {
        let m = 1 + done % 5;
        if let Some(h) = random_connected(&mut rng, 3, m, 3 * m) {
            check(&h);
            done += 1;
        }
    }
}

#[test]
fn detector_matches_oracle_on_larger_uniformities() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for k in [4, 5] {
        for i in 0..300 {
            let m = 2 + i % 5;
            if let Some(h) = random_connected(&mut rng, k, m, k * m) {
                check(&h);
            }
        }
    }
}

#[test]
fn dense_shapes_with_six_edges() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        if let Some(h) = random_connected(&mut rng, 3, 6, 11) {
            check(&h);
        }
    }
}

#[test]
fn small_shapes_cover_every_case() {
    let mut cases = BTreeSet::new();
    let mut bicycles = BTreeSet::new();
    for h in connected_family(3, 4, 9) {
        match decompose_component(&h, 0).unwrap() {
            Outcome::Bicycle(w) => bicycles.insert(w.kind),
            Outcome::Decomposed(d) => cases.insert(d.case.name()),
        };
    }
    assert_eq!(cases.len(), 6, "{cases:?}");
    assert!(bicycles.len() >= 3, "{bicycles:?}");
}
