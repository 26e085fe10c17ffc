mod common;

use common::{id, layer, rng};
use plexnet::centrality::{
    betweenness, closeness, eigencentrality, DEFAULT_EC_MAX_ITER, DEFAULT_EC_TOLERANCE,
};
use plexnet::community::edge_betweenness;
use plexnet_oracle as oracle;
use rand::Rng;

#[test]
fn betweenness_matches_path_enumeration() {
    let mut rng = rng(7);
    let mut checked = 0;
    for _ in 0..300 {
        let n = rng.gen_range(1..=8);
        let p = rng.gen_range(0.1..0.9);
        let edges = oracle::random_graph(&mut rng, n, p);
        let fast = betweenness(&layer(n, &edges));
        let naive = oracle::betweenness(n, &edges);
        for (i, want) in naive.iter().enumerate() {
            let got = fast.get(&id(i)).unwrap();
            assert!(
                (got - want).abs() <= 1e-9,
                "n={n} edges={edges:?} node {i}: {got} vs {want}"
            );
        }
        checked += 1;
    }
    assert!(checked >= 200);
}

#[test]
fn edge_betweenness_matches_path_enumeration() {
    let mut rng = rng(8);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let edges = oracle::random_graph(&mut rng, n, 0.5);
        let fast = edge_betweenness(&layer(n, &edges));
        let naive = oracle::edge_betweenness(n, &edges);
        assert_eq!(fast.len(), naive.len());
        for ((u, v), want) in naive {
            let got = fast[&(id(u), id(v))];
            assert!((got - want).abs() <= 1e-9, "edge {u}-{v}: {got} vs {want}");
        }
    }
}

#[test]
fn closeness_matches_floyd_warshall() {
    let mut rng = rng(9);
    for _ in 0..200 {
        let n = rng.gen_range(2..=12);
        let edges = oracle::random_connected_graph(&mut rng, n, 0.2);
        let fast = closeness(&layer(n, &edges)).unwrap();
        let naive = oracle::closeness(n, &edges).unwrap();
        for (i, want) in naive.iter().enumerate() {
            assert!((fast.get(&id(i)).unwrap() - want).abs() <= 1e-12);
        }
    }
}

#[test]
fn closeness_rejects_what_the_oracle_cannot_define() {
    let mut rng = rng(10);
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let edges = oracle::random_graph(&mut rng, n, 0.2);
        let fast = closeness(&layer(n, &edges));
        assert_eq!(fast.is_ok(), oracle::closeness(n, &edges).is_some());
    }
}

#[test]
fn eigencentrality_matches_dense_solver() {
    let mut rng = rng(11);
    for _ in 0..100 {
        let n = rng.gen_range(2..=20);
        let edges = oracle::random_connected_graph(&mut rng, n, 0.25);
        let fast =
            eigencentrality(&layer(n, &edges), DEFAULT_EC_TOLERANCE, DEFAULT_EC_MAX_ITER).unwrap();
        let (_, want) = oracle::principal_eigenvector(n, &edges);
        for (i, w) in want.iter().enumerate() {
            let got = fast.get(&id(i)).unwrap();
            assert!((got - w).abs() <= 1e-8, "n={n} node {i}: {got} vs {w}");
        }
    }
}
