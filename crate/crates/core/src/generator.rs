//! Seeded random temporal graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{NodeId, TemporalEdge, TemporalGraph, Time};

/// Erdős–Rényi-style temporal multigraph: every edge picks a uniform ordered
/// pair of distinct nodes, a uniform departure in `1..=horizon` and a uniform
/// travel time in `1..=max_travel`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorParams {
    pub nodes: usize,
    pub edges: usize,
    pub horizon: Time,
    pub max_travel: Time,
    pub seed: u64,
}

impl GeneratorParams {
    pub fn new(nodes: usize, edges: usize, horizon: Time, seed: u64) -> Self {
        GeneratorParams {
            nodes,
            edges,
            horizon,
            max_travel: 3,
            seed,
        }
    }
}

pub fn random_temporal_graph(p: &GeneratorParams) -> Result<TemporalGraph> {
    if p.edges > 0 && p.nodes < 2 {
        return Err(Error::Config("need at least two nodes to place an edge".into()));
    }
    if p.horizon < 1 || p.max_travel < 1 {
        return Err(Error::Config("horizon and travel bound must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let n = p.nodes as NodeId;
    let edges = (0..p.edges)
        .map(|_| {
            let tail = rng.gen_range(0..n);
            let mut head = rng.gen_range(0..n - 1);
            if head >= tail {
                head += 1;
            }
            TemporalEdge {
                tail,
                head,
                dep: rng.gen_range(1..=p.horizon),
                travel: rng.gen_range(1..=p.max_travel),
            }
        })
        .collect();
    TemporalGraph::from_edges(p.nodes, edges)
}

/// A uniformly random order of `0..len`.
pub fn random_permutation(len: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..len).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

/// Median gap between consecutive departures from the same node, or `None`
/// when no node has two departures.
pub fn median_inter_event_gap(graph: &TemporalGraph) -> Option<Time> {
    let mut per_node: Vec<Vec<Time>> = vec![Vec::new(); graph.num_nodes()];
    for e in graph.edges() {
        per_node[e.tail as usize].push(e.dep);
    }
    let mut gaps = Vec::new();
    for deps in &mut per_node {
        deps.sort_unstable();
        gaps.extend(deps.windows(2).map(|w| w[1] - w[0]));
    }
    if gaps.is_empty() {
        return None;
    }
    let mid = gaps.len() / 2;
    Some(*gaps.select_nth_unstable(mid).1)
}
