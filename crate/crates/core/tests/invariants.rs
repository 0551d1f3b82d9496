use std::collections::BTreeSet;

use proptest::prelude::*;
use tilelab::graph::{from_graph6, parse_edge_list, to_edge_list, to_graph6};
use tilelab::random::{sample_gnp, sample_gnp_coupled};
use tilelab::regularity::{check_eps_regular_exact, hall_perfect_matching, HallOutcome, Regularity};
use tilelab::tiling::max_tiling_greedy;
use tilelab::{classify, perfect_tiling, Graph, Pattern, Rational, Seed, TilingStatus, VertexSet};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let m = pairs.len();
        proptest::collection::vec(any::<bool>(), m)
            .prop_map(move |keep| Graph::from_edge_list(n, pairs.iter().zip(&keep).filter(|x| *x.1).map(|x| *x.0)).unwrap())
    })
}

fn covered(h: &Graph, copies: &[Vec<usize>]) -> Option<BTreeSet<usize>> {
    let mut seen = BTreeSet::new();
    for c in copies {
        if c.len() != h.n() || !c.iter().all(|&v| seen.insert(v)) {
            return None;
        }
    }
    Some(seen)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn graph6_round_trip(g in graph(40)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn edge_list_round_trip(g in graph(25)) {
        prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn density_invariants(g in graph(8).prop_filter("two vertices", |g| g.n() >= 2)) {
        let p = classify(&g).unwrap();
        prop_assert!(p.d <= p.d_star);
        prop_assert!(p.d_star_v.values().all(|&dv| dv <= p.d_star));
        prop_assert_eq!(p.d_star_v.values().max().copied().unwrap(), p.d_star);
        prop_assert_eq!(p.balanced, p.d == p.d_star);
        prop_assert!(!p.strictly_balanced || p.balanced);
        prop_assert!(!p.balanced || p.vertex_balanced);
    }

    #[test]
    fn found_tilings_are_perfect(n in 3usize..=15, p in 0.2f64..0.9, seed in any::<u64>()) {
        let n = n - n % 3;
        let g = sample_gnp(n, p, Seed(seed)).unwrap();
        let h = Pattern::clique(3);
        if let TilingStatus::Found(t) = perfect_tiling(&g, &h, 100_000).status {
            let lists = t.vertex_lists();
            let seen = covered(h.graph(), &lists).unwrap();
            prop_assert_eq!(seen.len(), n);
            for c in &lists {
                prop_assert!(c.iter().all(|&u| c.iter().all(|&v| u == v || g.has_edge(u, v))));
            }
        }
    }

    #[test]
    fn greedy_tilings_are_disjoint_copies(g in graph(14), seed in any::<u64>()) {
        let h = Pattern::clique(3);
        let t = max_tiling_greedy(&g, &h, Seed(seed), 4);
        let lists = t.vertex_lists();
        prop_assert!(covered(h.graph(), &lists).is_some());
        for c in &lists {
            prop_assert!(c.iter().all(|&u| c.iter().all(|&v| u == v || g.has_edge(u, v))));
        }
    }

    #[test]
    fn coupled_samples_are_nested(n in 2usize..40, p1 in 0.0f64..1.0, dp in 0.0f64..1.0, seed in any::<u64>()) {
        let p2 = (p1 + dp).min(1.0);
        let (a, b) = sample_gnp_coupled(n, p1, p2, Seed(seed)).unwrap();
        prop_assert!(a.is_subgraph_of(&b));
        prop_assert_eq!(sample_gnp(n, p1, Seed(seed)).unwrap(), a);
    }

    #[test]
    fn hall_outcome_verifies(k in 1usize..8, keep in proptest::collection::vec(any::<bool>(), 64)) {
        let pairs = (0..k).flat_map(|u| (0..k).map(move |v| (u, k + v))).filter(|&(u, v)| keep[u * 8 + v - k]);
        let g = Graph::from_edge_list(2 * k, pairs).unwrap();
        let a = VertexSet::from_iter_checked(2 * k, 0..k).unwrap();
        let b = VertexSet::from_iter_checked(2 * k, k..2 * k).unwrap();
        let out = hall_perfect_matching(&g, &a, &b).unwrap();
        prop_assert!(out.verify(&g, &a, &b));
        if let HallOutcome::Matching { pairs } = out {
            prop_assert_eq!(pairs.len(), k);
        }
    }

    #[test]
    fn complete_pairs_are_regular(a in 1usize..7, b in 1usize..7, num in 1i64..10) {
        let g = tilelab::graph::named::complete_bipartite(a, b);
        let sa = VertexSet::from_iter_checked(a + b, 0..a).unwrap();
        let sb = VertexSet::from_iter_checked(a + b, a..a + b).unwrap();
        let r = check_eps_regular_exact(&g, &sa, &sb, Rational::new(num, 10)).unwrap();
        prop_assert_eq!(r.regular, Regularity::Yes);
    }

    #[test]
    fn rational_display_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let r = Rational::new(n, d);
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }
}
