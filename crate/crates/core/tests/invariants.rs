mod common;

use std::collections::VecDeque;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

use common::*;
use temporal_betweenness::generator::random_permutation;
use temporal_betweenness::graph::{parse_str, StaticGraph};
use temporal_betweenness::metrics::{kendall_tau, reference, weighted_kendall_tau, Ranking};
use temporal_betweenness::oracle::brandes_static;
use temporal_betweenness::scores::to_csv_string;
use temporal_betweenness::{
    node_betweenness, Beta, Config, CriterionKind, EngineKind, Mode, NodeId, ParseOptions, Scores, TemporalEdge,
    TemporalGraph,
};

fn graph() -> impl Strategy<Value = TemporalGraph> {
    (2usize..=7).prop_flat_map(|n| {
        prop::collection::vec((0..n, 1..n, 1i64..=12, 1i64..=3), 0..=18).prop_map(move |raw| {
            let edges = raw
                .into_iter()
                .map(|(t, k, dep, travel)| {
                    TemporalEdge::new(t as NodeId, ((t + k) % n) as NodeId, dep, travel).unwrap()
                })
                .collect();
            TemporalGraph::from_edges(n, edges).unwrap()
        })
    })
}

fn kind() -> impl Strategy<Value = CriterionKind> {
    (0usize..7).prop_map(|i| CriterionKind::ALL[i])
}

fn beta() -> impl Strategy<Value = Beta> {
    (0usize..5).prop_map(|i| BETAS[i])
}

fn exact(g: &TemporalGraph, config: &Config) -> Vec<BigRational> {
    node_betweenness(g, config).unwrap().scores.exact().unwrap().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn engine_matches_oracle(g in graph(), kind in kind(), beta in beta()) {
        check_against_oracle(&g, kind, beta, EngineKind::Auto, &oracle(&g, kind, beta))
            .map_err(TestCaseError::fail)?;
    }

    #[test]
    fn input_order_does_not_matter(g in graph(), kind in kind(), beta in beta(), seed in any::<u64>()) {
        let config = Config::new(kind, beta);
        let base = node_betweenness(&g, &config).unwrap();
        let p = g.permuted(&random_permutation(g.num_edges(), seed));
        let other = node_betweenness(&p, &config).unwrap();
        prop_assert_eq!(to_csv_string(g.labels(), &base.scores), to_csv_string(p.labels(), &other.scores));
    }

    #[test]
    fn worker_count_does_not_matter(g in graph(), kind in kind(), beta in beta(), workers in 2usize..6) {
        let one = node_betweenness(&g, &Config::new(kind, beta)).unwrap();
        let many = node_betweenness(&g, &Config::new(kind, beta).with_workers(workers)).unwrap();
        prop_assert_eq!(one.scores, many.scores);
    }

    #[test]
    fn sources_are_additive(g in graph(), kind in kind(), beta in beta(), mask in any::<u8>()) {
        let n = g.num_nodes() as NodeId;
        let (a, b): (Vec<NodeId>, Vec<NodeId>) = (0..n).partition(|&v| mask >> v & 1 == 1);
        let total = exact(&g, &Config::new(kind, beta));
        let xa = exact(&g, &Config::new(kind, beta).with_sources(a));
        let xb = exact(&g, &Config::new(kind, beta).with_sources(b));
        for v in 0..n as usize {
            prop_assert_eq!(&total[v], &(&xa[v] + &xb[v]));
        }
    }

    #[test]
    fn fast_mode_tracks_exact(g in graph(), kind in kind(), beta in beta()) {
        let e = exact(&g, &Config::new(kind, beta));
        let Scores::Fast(f) = node_betweenness(&g, &Config::new(kind, beta).with_mode(Mode::Fast)).unwrap().scores else {
            panic!("fast mode returned exact scores")
        };
        for (x, y) in e.iter().zip(&f) {
            let x = x.to_f64().unwrap();
            prop_assert!((x - y).abs() <= 1e-9 * x.abs().max(1.0), "{} vs {}", x, y);
        }
    }

    #[test]
    fn edge_list_round_trip(g in graph()) {
        let text = g.to_edge_list();
        let back = parse_str(&text, ParseOptions::default()).unwrap();
        prop_assert_eq!(back.to_edge_list(), text);
    }

    #[test]
    fn brandes_matches_pair_counting(n in 1usize..9, pairs in prop::collection::vec((0usize..9, 0usize..9), 0..30)) {
        let pairs: Vec<(NodeId, NodeId)> = pairs
            .into_iter()
            .filter(|&(u, v)| u < n && v < n && u != v)
            .map(|(u, v)| (u as NodeId, v as NodeId))
            .collect();
        let g = StaticGraph::from_pairs(n, pairs);
        prop_assert_eq!(brandes_static(&g), naive_static(&g));
    }
}

/// Distances and path counts from `s`.
fn bfs(g: &StaticGraph, s: usize) -> (Vec<Option<usize>>, Vec<u64>) {
    let n = g.num_nodes();
    let mut dist = vec![None; n];
    let mut count = vec![0u64; n];
    dist[s] = Some(0);
    count[s] = 1;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        let du = dist[u].unwrap();
        for &w in g.successors(u as NodeId) {
            let w = w as usize;
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
            if dist[w] == Some(du + 1) {
                count[w] += count[u];
            }
        }
    }
    (dist, count)
}

fn naive_static(g: &StaticGraph) -> Vec<BigRational> {
    let n = g.num_nodes();
    let all: Vec<_> = (0..n).map(|s| bfs(g, s)).collect();
    let mut out = vec![BigRational::zero(); n];
    for s in 0..n {
        for t in 0..n {
            let Some(dst) = all[s].0[t] else { continue };
            if s == t {
                continue;
            }
            for v in (0..n).filter(|&v| v != s && v != t) {
                if let (Some(a), Some(b)) = (all[s].0[v], all[v].0[t]) {
                    if a + b == dst {
                        let through = all[s].1[v] * all[v].1[t];
                        out[v] += BigRational::new(through.into(), all[s].1[t].into());
                    }
                }
            }
        }
    }
    out
}

fn ranking(scores: &[i32], f: impl Fn(f64) -> f64) -> Ranking {
    Ranking::new(scores.iter().enumerate().map(|(i, &s)| (format!("n{i}"), f(s as f64))).collect()).unwrap()
}

fn non_constant(v: &[i32]) -> bool {
    v.iter().any(|&x| x != v[0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn metrics_symmetric_and_rescaling_invariant(
        (x, y) in (2usize..40).prop_flat_map(|n| {
            (prop::collection::vec(0i32..15, n), prop::collection::vec(0i32..15, n))
        })
    ) {
        prop_assume!(non_constant(&x) && non_constant(&y));
        let (a, b) = (ranking(&x, |s| s), ranking(&y, |s| s));
        let (a2, b2) = (ranking(&x, |s| 3.0 * s + 1.0), ranking(&y, |s| (s / 4.0).exp()));
        let close = |p: f64, q: f64| (p - q).abs() < 1e-9;
        let kt = kendall_tau(&a, &b).unwrap();
        let wkt = weighted_kendall_tau(&a, &b).unwrap();
        prop_assert!(close(kt, kendall_tau(&b, &a).unwrap()));
        prop_assert!(close(wkt, weighted_kendall_tau(&b, &a).unwrap()));
        prop_assert!(close(kt, kendall_tau(&a2, &b2).unwrap()));
        prop_assert!(close(wkt, weighted_kendall_tau(&a2, &b2).unwrap()));
        prop_assert!(close(kt, reference::kendall_tau(&a, &b).unwrap()));
        prop_assert!(close(wkt, reference::weighted_kendall_tau(&a, &b).unwrap()));
        prop_assert!((-1.0..=1.0).contains(&kt) && (-1.0 - 1e-12..=1.0 + 1e-12).contains(&wkt));
    }
}
