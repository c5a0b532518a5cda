use std::sync::atomic::{AtomicU64, Ordering};

use proptest::prelude::*;

use walkspec::connectivity::vertex_connectivity;
use walkspec::enumerate::{enumerate_graphs, for_each_graph, Constraints, SearchOptions};
use walkspec::graph6::{parse_graph6, to_graph6};
use walkspec::symmetry::{automorphism_orbits, canonical_form};
use walkspec::walk::{cospectral_partition, is_walk_regular, walk_profile, walk_profile_to};
use walkspec::Graph;

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::from_edges(n, &edges, &[]).unwrap()
        })
    })
}

fn count(n: usize, f: impl Fn(&Graph) -> bool + Sync) -> u64 {
    let bad = AtomicU64::new(0);
    for_each_graph(n, None, false, &SearchOptions::default(), |g| {
        if !f(g) {
            bad.fetch_add(1, Ordering::Relaxed);
        }
    })
    .unwrap();
    bad.into_inner()
}

/// Smallest number of vertices whose removal disconnects `g` or leaves one vertex.
fn brute_force_connectivity(g: &Graph) -> usize {
    let n = g.n();
    (0..n)
        .find(|&k| {
            (0u32..1 << n).filter(|m| m.count_ones() as usize == k).any(|mask| {
                let keep: Vec<usize> = (0..n).filter(|v| mask & (1 << v) == 0).collect();
                let edges: Vec<_> = g
                    .edges()
                    .into_iter()
                    .filter_map(|(u, v)| {
                        let (a, b) = (keep.iter().position(|&x| x == u)?, keep.iter().position(|&x| x == v)?);
                        Some((a, b))
                    })
                    .collect();
                keep.len() <= 1 || !Graph::from_edges(keep.len(), &edges, &[]).unwrap().is_connected()
            })
        })
        .unwrap_or(n - 1)
}

#[test]
fn lengths_up_to_n_minus_1_decide_all_lengths_up_to_2n() {
    for n in 1..=7 {
        let bad = count(n, |g| {
            let short = walk_profile(g);
            let long = walk_profile_to(g, 2 * n);
            (0..n).all(|a| (0..n).all(|b| (short.row(a) == short.row(b)) == (long.row(a) == long.row(b))))
        });
        assert_eq!(bad, 0, "n = {n}");
    }
}

#[test]
fn orbits_refine_cospectral_blocks() {
    for n in 1..=8 {
        assert_eq!(count(n, |g| automorphism_orbits(g).orbits.refines(&cospectral_partition(g))), 0, "n = {n}");
    }
}

#[test]
fn complement_preserves_cospectrality_on_regular_graphs() {
    for n in 1..=10 {
        for d in (0..n).filter(|d| n * d % 2 == 0) {
            let bad = AtomicU64::new(0);
            for_each_graph(n, Some(d), false, &SearchOptions::default(), |g| {
                if cospectral_partition(&g.complement().unwrap()) != cospectral_partition(g) {
                    bad.fetch_add(1, Ordering::Relaxed);
                }
            })
            .unwrap();
            assert_eq!(bad.into_inner(), 0, "n = {n}, d = {d}");
        }
    }
}

#[test]
fn complement_can_change_cospectrality_of_irregular_graphs() {
    let g = parse_graph6("G??XEs").unwrap();
    let c = g.complement().unwrap();
    assert!(g.is_connected() && c.is_connected());
    assert_ne!(cospectral_partition(&g), cospectral_partition(&c));
    assert_eq!(automorphism_orbits(&g).orbits, automorphism_orbits(&c).orbits);
}

#[test]
fn complement_orbits_agree() {
    for n in 1..=8 {
        assert_eq!(count(n, |g| automorphism_orbits(&g.complement().unwrap()).orbits == automorphism_orbits(g).orbits), 0);
    }
}

#[test]
fn regular_counts_are_complement_symmetric() {
    let opts = SearchOptions::default();
    for (n, d) in [(8, 2), (8, 3), (10, 3), (10, 4)] {
        let direct = enumerate_graphs(&Constraints::regular(n, n - 1 - d), &opts, |_| {}).unwrap();
        let low = enumerate_graphs(&Constraints::regular(n, d), &opts, |_| {}).unwrap();
        assert_eq!(direct, low, "n = {n}, d = {d}");
        assert_eq!(for_each_graph(n, Some(n - 1 - d), false, &opts, |_| {}).unwrap(), low);
    }
}

#[test]
fn degree_4_and_7_witnesses_are_complements() {
    let forms: Vec<String> = include_str!("../data/witnesses/walk_regular_n12.g6")
        .lines()
        .map(|l| canonical_form(&parse_graph6(l).unwrap()).unwrap().bytes)
        .collect();
    let by_degree = |d| {
        include_str!("../data/witnesses/walk_regular_n12.g6")
            .lines()
            .map(|l| parse_graph6(l).unwrap())
            .find(|g| g.regular_degree() == Some(d))
            .unwrap()
    };
    for (low, high) in [(4, 7), (5, 6)] {
        let c = canonical_form(&by_degree(low).complement().unwrap()).unwrap().bytes;
        let h = canonical_form(&by_degree(high)).unwrap().bytes;
        assert_eq!(c, h);
        assert!(forms.contains(&c));
        assert!(is_walk_regular(&by_degree(low)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn walk_regular_graphs_are_regular(g in graph_strategy(10)) {
        if is_walk_regular(&g) {
            prop_assert!(g.regular_degree().is_some());
        }
    }

    #[test]
    fn graph6_round_trip(g in graph_strategy(20)) {
        prop_assert_eq!(parse_graph6(&to_graph6(&g).unwrap()).unwrap(), g);
    }

    #[test]
    fn complement_is_an_involution(g in graph_strategy(16)) {
        let c = g.complement().unwrap();
        prop_assert_eq!(c.complement().unwrap(), g.clone());
        prop_assert!((0..g.n()).all(|v| g.degree(v) + c.degree(v) == g.n() - 1));
    }

    #[test]
    fn connectivity_matches_brute_force(g in graph_strategy(8)) {
        match vertex_connectivity(&g) {
            Ok(k) => prop_assert_eq!(k, brute_force_connectivity(&g)),
            Err(_) => prop_assert!(!g.is_connected() && brute_force_connectivity(&g) == 0),
        }
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph_strategy(14), perm in Just((0..14).collect::<Vec<usize>>()).prop_shuffle()) {
        let n = g.n();
        let mut p: Vec<usize> = perm.into_iter().filter(|&x| x < n).collect();
        p.truncate(n);
        prop_assert_eq!(canonical_form(&g.permuted(&p)).unwrap().bytes, canonical_form(&g).unwrap().bytes);
    }
}
