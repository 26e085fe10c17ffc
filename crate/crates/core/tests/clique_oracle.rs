mod common;

use std::time::Instant;

use common::{id, layer, rng};
use plexnet::clique::{maximal_cliques, maximum_cliques};
use plexnet_oracle as oracle;
use rand::Rng;

fn as_ids(cliques: &[Vec<usize>]) -> Vec<Vec<plexnet::PersonId>> {
    cliques
        .iter()
        .map(|c| c.iter().map(|&i| id(i)).collect())
        .collect()
}

#[test]
fn maximal_cliques_match_subset_enumeration() {
    let start = Instant::now();
    let mut rng = rng(31);
    for _ in 0..150 {
        let n = rng.gen_range(1..=15);
        let p = rng.gen_range(0.1..0.9);
        let edges = oracle::random_graph(&mut rng, n, p);
        let fast = maximal_cliques(&layer(n, &edges));
        let naive = oracle::maximal_cliques(n, &edges);
        assert_eq!(fast.cliques, as_ids(&naive), "n={n} edges={edges:?}");

        let top = naive[0].len();
        let naive_max: Vec<_> = naive.iter().filter(|c| c.len() == top).cloned().collect();
        assert_eq!(
            maximum_cliques(&layer(n, &edges)).cliques,
            as_ids(&naive_max)
        );
    }
    assert!(start.elapsed().as_secs() < 60);
}

#[test]
fn cocktail_party_graph_has_power_of_two_cliques() {
    // Complement of a perfect matching on 2m nodes: every clique picks one
    // node from each matched pair.
    for m in 1..=6 {
        let n = 2 * m;
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| !(u % 2 == 0 && v == u + 1))
            .collect();
        let set = maximal_cliques(&layer(n, &edges));
        assert_eq!(set.len(), 1 << m);
        assert!(set.cliques.iter().all(|c| c.len() == m));
    }
}
