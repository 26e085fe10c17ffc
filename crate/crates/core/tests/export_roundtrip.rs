mod common;

use common::{id, layer};
use plexnet::centrality::CentralitySet;
use plexnet::community::girvan_newman;
use plexnet::export::layout::DEFAULT_ITERATIONS;
use plexnet::export::tables::{
    centrality_csv, edges_csv, partition_csv, read_centrality_csv, read_partition_csv,
};
use plexnet::export::{
    force_layout, layer_to_graphml, network_to_graphml, read_dot, read_graphml, to_dot,
    LayoutParams, NodeAnnotations,
};
use plexnet::ingest::{parse_edge_csv, resolve, DanglingPolicy};
use plexnet::{EdgeKind, MultiplexNetwork};
use proptest::prelude::*;

fn network() -> impl Strategy<Value = MultiplexNetwork> {
    (2usize..10).prop_flat_map(|n| {
        let edge = (0..n, 0..n, 0usize..5).prop_filter("no loops", |(u, v, _)| u != v);
        (
            proptest::collection::vec("[A-Za-z&<>\" ]{0,8}", n),
            proptest::collection::vec(edge, 0..20),
        )
            .prop_map(|(names, edges)| {
                MultiplexNetwork::build(
                    names.into_iter().enumerate().map(|(i, name)| (id(i), name)),
                    edges
                        .into_iter()
                        .map(|(u, v, k)| (id(u), id(v), EdgeKind::ALL[k])),
                )
                .unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graphml_round_trip(net in network()) {
        let doc = network_to_graphml(&net, &NodeAnnotations::default()).unwrap();
        let (back, ann) = read_graphml(&doc).unwrap();
        prop_assert_eq!(&back, &net);
        prop_assert_eq!(network_to_graphml(&back, &ann).unwrap(), doc);
    }

    #[test]
    fn edge_csv_round_trip(net in network()) {
        let text = edges_csv(&net).unwrap();
        let records = parse_edge_csv(text.as_bytes()).unwrap();
        let (back, _) = resolve(&records, DanglingPolicy::Reject).unwrap();
        for kind in EdgeKind::ALL {
            prop_assert!(back.edges(kind).eq(net.edges(kind)));
        }
    }

    #[test]
    fn dot_round_trip(net in network()) {
        let g = net.layer(EdgeKind::Work);
        let doc = to_dot(&net, &g, &NodeAnnotations::default()).unwrap();
        prop_assert_eq!(read_dot(&doc).unwrap(), g.with_kind(None));
    }
}

fn barbell(k: usize) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    for side in [0, k] {
        for u in 0..k {
            for v in u + 1..k {
                edges.push((side + u, side + v));
            }
        }
    }
    edges.push((k - 1, k));
    (2 * k, edges)
}

#[test]
fn annotated_layer_round_trip() {
    let (n, edges) = barbell(5);
    let g = layer(n, &edges).with_kind(Some(EdgeKind::Alliance));
    let net = MultiplexNetwork::build(
        (0..n).map(|i| (id(i), format!("Person {i}"))),
        edges
            .iter()
            .map(|&(u, v)| (id(u), id(v), EdgeKind::Alliance)),
    )
    .unwrap();
    let set = CentralitySet::compute(&g).unwrap();
    let split = girvan_newman(&g, 1).unwrap();
    let layout = force_layout(&g, 42, 200, LayoutParams::default()).unwrap();
    let ann = NodeAnnotations::default()
        .with_partition(&split.splits[0].partition)
        .with_centrality(&set)
        .with_layout(&layout);

    let doc = layer_to_graphml(&net, &g, &ann).unwrap();
    let (back, back_ann) = read_graphml(&doc).unwrap();
    assert_eq!(back_ann, ann);
    assert_eq!(
        layer_to_graphml(&back, &back.layer(EdgeKind::Alliance), &back_ann).unwrap(),
        doc
    );

    let scores = read_centrality_csv(&centrality_csv(&set).unwrap()).unwrap();
    assert_eq!(scores, ann.scores);
    let partition = &split.splits[0].partition;
    assert_eq!(
        &read_partition_csv(&partition_csv(partition).unwrap()).unwrap(),
        partition
    );
}

fn centroid(points: &[(f64, f64)]) -> (f64, f64) {
    let n = points.len() as f64;
    let (x, y) = points
        .iter()
        .fold((0.0, 0.0), |a, p| (a.0 + p.0, a.1 + p.1));
    (x / n, y / n)
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

#[test]
fn barbell_layout_separates_the_bells() {
    let (n, edges) = barbell(6);
    let g = layer(n, &edges);
    for seed in 0..10 {
        let result = force_layout(&g, seed, DEFAULT_ITERATIONS, LayoutParams::default()).unwrap();
        let pos: Vec<(f64, f64)> = (0..n).map(|i| result.positions[&id(i)]).collect();
        let (left, right) = pos.split_at(n / 2);
        let (cl, cr) = (centroid(left), centroid(right));
        let spread = left
            .iter()
            .map(|&p| dist(p, cl))
            .chain(right.iter().map(|&p| dist(p, cr)))
            .fold(0.0, f64::max);
        assert!(
            dist(cl, cr) > 2.0 * spread,
            "seed {seed}: {} vs {spread}",
            dist(cl, cr)
        );
    }
}

#[test]
fn layout_is_reproducible() {
    let (n, edges) = barbell(4);
    let g = layer(n, &edges);
    let a = force_layout(&g, 5, 100, LayoutParams::default()).unwrap();
    let b = force_layout(&g, 5, 100, LayoutParams::default()).unwrap();
    assert_eq!(a, b);
    let c = force_layout(&g, 6, 100, LayoutParams::default()).unwrap();
    assert_ne!(a.positions, c.positions);
}
