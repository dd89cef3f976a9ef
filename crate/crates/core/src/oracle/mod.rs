//! Brute-force ground truth for small instances.
//!
//! Every walk from every source is enumerated and scored directly from the
//! definitions. Nothing here shares code with the engines beyond the cost
//! algebra itself.

mod brandes;
mod walks;

pub use brandes::brandes_static;
pub use walks::{enumerate_walks, for_each_walk, DEFAULT_WALK_CAP};

use std::collections::{BTreeSet, HashMap, HashSet};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::cost::{
    fold_walk_cost, CostOf, CostStructure, CostValue, Criterion, CriterionKind, CriterionVisitor, TargetOf,
    TargetStructure, TargetValue,
};
use crate::error::{Error, Result};
use crate::graph::{Beta, NodeId, TemporalGraph, Time};

/// One enumerated walk with its costs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkRecord {
    /// Input edge indices.
    pub edges: Vec<usize>,
    pub cost: CostValue,
    pub target: TargetValue,
    pub dep: Time,
    pub arr: Time,
}

impl WalkRecord {
    pub fn duration(&self) -> Time {
        self.arr - self.dep
    }
}

#[derive(Clone, Debug)]
pub struct OracleOptions {
    /// Maximum number of walks enumerated per source.
    pub cap: usize,
    /// Keep every enumerated walk in the report.
    pub keep_walks: bool,
    /// Restrict to these sources; `None` for all nodes.
    pub sources: Option<Vec<NodeId>>,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            cap: DEFAULT_WALK_CAP,
            keep_walks: false,
            sources: None,
        }
    }
}

/// Ground-truth quantities for one source `s`. Per-edge vectors use input
/// edge order.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceOracle {
    pub source: NodeId,
    pub walk_count: usize,
    /// Γ-optimal cost of `se`-walks.
    pub edge_cost: Vec<Option<CostValue>>,
    /// `σ_{s,e}`: number of Γ-optimal `se`-walks.
    pub sigma: Vec<BigUint>,
    /// `σ*_{s,e}`: optimal walks to `head(e)` that end with `e`.
    pub sigma_star_edge: Vec<BigUint>,
    /// Optimal target cost per node; `None` at `s` and unreachable nodes.
    pub target_cost: Vec<Option<TargetValue>>,
    /// `σ*_{s,t}`
    pub sigma_star: Vec<BigUint>,
    /// `σ*_{s,e,t}`, indexed `[e][t]`.
    pub sigma_star_through: Vec<Vec<BigUint>>,
    /// `θ_{s,e,t}`: distinct suffixes after `e` among optimal `st`-walks through `e`.
    pub theta: Vec<Vec<BigUint>>,
    /// `succ_{s,e}` as sorted input edge indices.
    pub successors: Vec<Vec<usize>>,
    /// `b_{s,e}`
    pub edge_betweenness: Vec<BigRational>,
    /// Interior occurrences of each node `u ≠ s`, weighted by `1/σ*_{s,t}`.
    pub node_contribution: Vec<BigRational>,
    /// Every walk, when requested.
    pub walks: Vec<WalkRecord>,
}

impl SourceOracle {
    /// Whether `t ≠ s` is reachable.
    pub fn reachable(&self, t: NodeId) -> bool {
        !self.sigma_star[t as usize].is_zero()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleReport {
    pub criterion: CriterionKind,
    pub beta: Beta,
    pub node_betweenness: Vec<BigRational>,
    pub sources: Vec<SourceOracle>,
}

pub fn oracle_betweenness(
    graph: &TemporalGraph,
    criterion: CriterionKind,
    beta: Beta,
    options: &OracleOptions,
) -> Result<OracleReport> {
    let n = graph.num_nodes();
    let sources: Vec<NodeId> = match &options.sources {
        Some(s) => {
            if let Some(&bad) = s.iter().find(|&&s| s as usize >= n) {
                return Err(Error::Config(format!("source {bad} is not a node (n = {n})")));
            }
            s.clone()
        }
        None => (0..n as NodeId).collect(),
    };
    let mut node_betweenness = vec![BigRational::zero(); n];
    let mut reports = Vec::with_capacity(sources.len());
    for s in sources {
        let r = source_oracle(graph, criterion, beta, s, options)?;
        for (acc, c) in node_betweenness.iter_mut().zip(&r.node_contribution) {
            *acc += c;
        }
        reports.push(r);
    }
    Ok(OracleReport {
        criterion,
        beta,
        node_betweenness,
        sources: reports,
    })
}

/// Ground truth for a single source.
pub fn source_oracle(
    graph: &TemporalGraph,
    criterion: CriterionKind,
    beta: Beta,
    s: NodeId,
    options: &OracleOptions,
) -> Result<SourceOracle> {
    struct Visit<'a> {
        graph: &'a TemporalGraph,
        beta: Beta,
        s: NodeId,
        options: &'a OracleOptions,
    }
    impl CriterionVisitor for Visit<'_> {
        type Output = Result<SourceOracle>;
        fn visit<C: Criterion>(self) -> Self::Output {
            source_oracle_typed::<C>(self.graph, self.beta, self.s, self.options)
        }
    }
    criterion.dispatch(Visit {
        graph,
        beta,
        s,
        options,
    })
}

fn source_oracle_typed<C: Criterion>(
    graph: &TemporalGraph,
    beta: Beta,
    s: NodeId,
    options: &OracleOptions,
) -> Result<SourceOracle> {
    let n = graph.num_nodes();
    let m = graph.num_edges();
    let edges = graph.edges();

    let mut best_edge: Vec<Option<(CostOf<C>, u64)>> = vec![None; m];
    let mut best_node: Vec<Option<(TargetOf<C>, u64)>> = vec![None; n];
    let mut walks = Vec::new();
    let walk_count = for_each_walk(graph, s, beta, options.cap, |w| {
        let walk: Vec<_> = w.iter().map(|&i| edges[i]).collect();
        let last = w[w.len() - 1];
        let c = fold_walk_cost::<C::Gamma>(&walk).expect("non-empty");
        let tc = C::target_cost(&edges[last], c);
        merge_min(&mut best_edge[last], c);
        let t = edges[last].head;
        if t != s {
            merge_min(&mut best_node[t as usize], tc);
        }
        if options.keep_walks {
            walks.push(WalkRecord {
                edges: w.to_vec(),
                cost: C::Gamma::describe(c),
                target: C::Theta::describe(tc),
                dep: walk[0].dep,
                arr: walk[walk.len() - 1].arr(),
            });
        }
    })?;

    let mut through = vec![vec![0u64; n]; m];
    let mut suffixes: HashMap<(usize, NodeId), HashSet<Vec<usize>>> = HashMap::new();
    let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); m];
    let mut star_edge = vec![0u64; m];
    // occurrences[u][t]
    let mut occurrences = vec![vec![0u64; n]; n];
    for_each_walk(graph, s, beta, options.cap, |w| {
        let last = w[w.len() - 1];
        let t = edges[last].head;
        if t == s {
            return;
        }
        let walk: Vec<_> = w.iter().map(|&i| edges[i]).collect();
        let c = fold_walk_cost::<C::Gamma>(&walk).expect("non-empty");
        let tc = C::target_cost(&edges[last], c);
        if Some(tc) != best_node[t as usize].map(|(b, _)| b) {
            return;
        }
        star_edge[last] += 1;
        for (k, &e) in w.iter().enumerate() {
            through[e][t as usize] += 1;
            suffixes.entry((e, t)).or_default().insert(w[k + 1..].to_vec());
            if let Some(&f) = w.get(k + 1) {
                succ[e].insert(f);
                let u = edges[e].head;
                if u != s {
                    occurrences[u as usize][t as usize] += 1;
                }
            }
        }
    })?;

    let sigma_star: Vec<BigUint> = best_node
        .iter()
        .map(|b| BigUint::from(b.map_or(0, |(_, k)| k)))
        .collect();
    let frac = |num: u64, t: usize| -> BigRational {
        if num == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::from(num), BigInt::from(sigma_star[t].clone()))
        }
    };
    let edge_betweenness = (0..m)
        .map(|e| (0..n).fold(BigRational::zero(), |acc, t| acc + frac(through[e][t], t)))
        .collect();
    let node_contribution = (0..n)
        .map(|u| (0..n).fold(BigRational::zero(), |acc, t| acc + frac(occurrences[u][t], t)))
        .collect();
    let theta = (0..m)
        .map(|e| {
            (0..n as NodeId)
                .map(|t| BigUint::from(suffixes.get(&(e, t)).map_or(0, HashSet::len)))
                .collect()
        })
        .collect();

    Ok(SourceOracle {
        source: s,
        walk_count,
        edge_cost: best_edge.iter().map(|b| b.map(|(c, _)| C::Gamma::describe(c))).collect(),
        sigma: best_edge.iter().map(|b| BigUint::from(b.map_or(0, |(_, k)| k))).collect(),
        sigma_star_edge: star_edge.into_iter().map(BigUint::from).collect(),
        target_cost: best_node.iter().map(|b| b.map(|(c, _)| C::Theta::describe(c))).collect(),
        sigma_star,
        sigma_star_through: through
            .into_iter()
            .map(|row| row.into_iter().map(BigUint::from).collect())
            .collect(),
        theta,
        successors: succ.into_iter().map(|s| s.into_iter().collect()).collect(),
        edge_betweenness,
        node_contribution,
        walks,
    })
}

fn merge_min<T: Ord + Copy>(slot: &mut Option<(T, u64)>, c: T) {
    match slot {
        Some((b, k)) if *b == c => *k += 1,
        Some((b, _)) if *b < c => {}
        _ => *slot = Some((c, 1)),
    }
}
