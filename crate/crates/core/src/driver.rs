//! All-sources node betweenness.
//!
//! Sources are handed out to a fixed pool of scoped threads through an atomic
//! counter. Each worker owns one engine state and one accumulator; the
//! accumulators are summed once at the end, so exact results do not depend on
//! scheduling.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::thread;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::cost::{CostStructure, CostValue, Criterion, CriterionKind, CriterionVisitor, TargetStructure, TargetValue};
use crate::engine::{EdgeBetweennessState, EngineKind, OpCounters};
use crate::error::{Error, Result};
use crate::graph::{Beta, NodeId, SortedRepresentation, TemporalGraph};
use crate::numeric::{Exact, Fast, Mode, Numeric, Scores};

/// Parameters of an all-sources run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub criterion: CriterionKind,
    pub beta: Beta,
    pub mode: Mode,
    pub engine: EngineKind,
    /// Worker threads; `0` means one per available core.
    pub workers: usize,
    /// Restrict to these sources; `None` for all nodes.
    pub sources: Option<Vec<NodeId>>,
}

impl Config {
    pub fn new(criterion: CriterionKind, beta: Beta) -> Self {
        Config {
            criterion,
            beta,
            mode: Mode::Exact,
            engine: EngineKind::Auto,
            workers: 1,
            sources: None,
        }
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_engine(mut self, engine: EngineKind) -> Self {
        self.engine = engine;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_sources(mut self, sources: Vec<NodeId>) -> Self {
        self.sources = Some(sources);
        self
    }
}

/// Node betweenness of every node, indexed by node id.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeBetweenness {
    pub scores: Scores,
    pub criterion: CriterionKind,
    pub beta: Beta,
    pub sources_processed: usize,
    pub counters: OpCounters,
}

pub fn node_betweenness(graph: &TemporalGraph, config: &Config) -> Result<NodeBetweenness> {
    let rep = SortedRepresentation::build(graph);
    node_betweenness_sorted(&rep, config)
}

/// As [`node_betweenness`], on a prebuilt representation.
pub fn node_betweenness_sorted(rep: &SortedRepresentation, config: &Config) -> Result<NodeBetweenness> {
    let n = rep.num_nodes();
    let sources: Vec<NodeId> = match &config.sources {
        Some(list) => {
            if let Some(&bad) = list.iter().find(|&&s| s as usize >= n) {
                return Err(Error::Config(format!("source {bad} is not a node (n = {n})")));
            }
            list.clone()
        }
        None => (0..n as NodeId).collect(),
    };
    config.engine.resolve(config.criterion, config.beta)?;

    struct Run<'a> {
        rep: &'a SortedRepresentation,
        config: &'a Config,
        sources: &'a [NodeId],
    }
    impl CriterionVisitor for Run<'_> {
        type Output = Result<(Scores, OpCounters)>;
        fn visit<C: Criterion>(self) -> Self::Output {
            match self.config.mode {
                Mode::Exact => run::<C, Exact>(self.rep, self.config, self.sources),
                Mode::Fast => run::<C, Fast>(self.rep, self.config, self.sources),
            }
        }
    }
    let (scores, counters) = config.criterion.dispatch(Run {
        rep,
        config,
        sources: &sources,
    })?;
    Ok(NodeBetweenness {
        scores,
        criterion: config.criterion,
        beta: config.beta,
        sources_processed: sources.len(),
        counters,
    })
}

fn run<C: Criterion, N: Numeric>(
    rep: &SortedRepresentation,
    config: &Config,
    sources: &[NodeId],
) -> Result<(Scores, OpCounters)> {
    let n = rep.num_nodes();
    let workers = match config.workers {
        0 => thread::available_parallelism().map_or(1, |p| p.get()),
        w => w,
    }
    .min(sources.len())
    .max(1);
    let next = AtomicUsize::new(0);
    let failed = AtomicBool::new(false);

    let work = || -> Result<(Vec<N::Score>, OpCounters)> {
        let mut state = EdgeBetweennessState::<C, N>::new(rep);
        let mut acc = vec![N::zero_score(); n];
        let mut ops = OpCounters::default();
        loop {
            let k = next.fetch_add(1, Ordering::Relaxed);
            if k >= sources.len() || failed.load(Ordering::Relaxed) {
                break;
            }
            if let Err(e) = state.run(sources[k], config.beta, config.engine) {
                failed.store(true, Ordering::Relaxed);
                return Err(e);
            }
            state.accumulate_nodes(&mut acc);
            add_counters(&mut ops, state.counters());
        }
        Ok((acc, ops))
    };

    let results: Vec<Result<(Vec<N::Score>, OpCounters)>> = if workers == 1 {
        vec![work()]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = (0..workers).map(|_| scope.spawn(work)).collect();
            handles
                .into_iter()
                .map(|h| {
                    h.join()
                        .unwrap_or_else(|p| Err(Error::Worker(panic_message(p.as_ref()))))
                })
                .collect()
        })
    };

    let mut total = vec![N::zero_score(); n];
    let mut ops = OpCounters::default();
    for r in results {
        let (acc, o) = r?;
        for (t, a) in total.iter_mut().zip(&acc) {
            N::add_score(t, a);
        }
        add_counters(&mut ops, o);
    }
    Ok((N::collect(total), ops))
}

fn add_counters(a: &mut OpCounters, b: OpCounters) {
    a.scanned += b.scanned;
    a.finalised += b.finalised;
    a.pushed += b.pushed;
    a.popped += b.popped;
    a.expired += b.expired;
    a.promoted += b.promoted;
    a.window_moves += b.window_moves;
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

/// Exact single-source quantities, with per-edge vectors in input edge order.
#[derive(Clone, Debug, PartialEq)]
pub struct SourceReport {
    pub source: NodeId,
    pub engine: EngineKind,
    /// `C[e]`
    pub cost: Vec<Option<CostValue>>,
    /// `Σ[e]`
    pub sigma: Vec<BigUint>,
    /// `Σ*[e]`
    pub sigma_star: Vec<BigUint>,
    /// `b_{s,e}`
    pub edge_betweenness: Vec<BigRational>,
    /// Successors of each edge, as input edge indices, sorted.
    pub successors: Vec<Vec<usize>>,
    /// `c*[v]`
    pub target_cost: Vec<Option<TargetValue>>,
    /// `σ*[v]`
    pub node_sigma_star: Vec<BigUint>,
    /// `Σ_{e into u} b_{s,e} − χ_{s,u}` for `u ≠ s`, zero at `s`.
    pub node_contribution: Vec<BigRational>,
    pub counters: OpCounters,
}

/// Runs one source in exact mode and reports everything the engine computed.
pub fn single_source(
    rep: &SortedRepresentation,
    criterion: CriterionKind,
    beta: Beta,
    engine: EngineKind,
    s: NodeId,
) -> Result<SourceReport> {
    struct One<'a> {
        rep: &'a SortedRepresentation,
        beta: Beta,
        engine: EngineKind,
        s: NodeId,
    }
    impl CriterionVisitor for One<'_> {
        type Output = Result<SourceReport>;
        fn visit<C: Criterion>(self) -> Result<SourceReport> {
            let rep = self.rep;
            let mut st = EdgeBetweennessState::<C, Exact>::new(rep);
            st.run(self.s, self.beta, self.engine)?;
            let m = rep.num_edges();
            let n = rep.num_nodes();
            let mut by_input = vec![0usize; m];
            for i in 0..m {
                by_input[rep.original_index(i)] = i;
            }
            let mut node_contribution = vec![Exact::zero_score(); n];
            st.accumulate_nodes(&mut node_contribution);
            Ok(SourceReport {
                source: self.s,
                engine: st.engine(),
                cost: by_input.iter().map(|&i| st.cost(i).map(C::Gamma::describe)).collect(),
                sigma: by_input.iter().map(|&i| st.sigma(i).clone()).collect(),
                sigma_star: by_input.iter().map(|&i| st.sigma_star(i).clone()).collect(),
                edge_betweenness: by_input.iter().map(|&i| st.edge_betweenness(i).clone()).collect(),
                successors: by_input
                    .iter()
                    .map(|&i| {
                        let mut s: Vec<usize> = st.successors(i).into_iter().map(|f| rep.original_index(f)).collect();
                        s.sort_unstable();
                        s
                    })
                    .collect(),
                target_cost: (0..n as NodeId)
                    .map(|v| st.target_cost(v).map(C::Theta::describe))
                    .collect(),
                node_sigma_star: (0..n as NodeId).map(|v| st.node_sigma_star(v).clone()).collect(),
                node_contribution,
                counters: st.counters(),
            })
        }
    }
    criterion.dispatch(One { rep, beta, engine, s })
}
