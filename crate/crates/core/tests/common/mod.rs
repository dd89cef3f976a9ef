#![allow(dead_code, clippy::needless_range_loop)]

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use temporal_betweenness::driver::{node_betweenness, single_source, Config};
use temporal_betweenness::generator::{random_temporal_graph, GeneratorParams};
use temporal_betweenness::oracle::{oracle_betweenness, OracleOptions, OracleReport};
use temporal_betweenness::{Beta, CriterionKind, EngineKind, NodeId, SortedRepresentation, TemporalGraph};

pub const BETAS: [Beta; 5] = [
    Beta::Finite(0),
    Beta::Finite(1),
    Beta::Finite(2),
    Beta::Finite(5),
    Beta::Infinite,
];

pub fn toy() -> TemporalGraph {
    TemporalGraph::from_labeled(&[
        ("a", "b", 1, 1),
        ("b", "c", 2, 1),
        ("a", "c", 2, 1),
        ("c", "d", 3, 1),
        ("b", "d", 4, 1),
    ])
    .unwrap()
}

pub fn looped() -> TemporalGraph {
    TemporalGraph::from_labeled(&[("a", "x", 1, 1), ("x", "y", 2, 1), ("y", "x", 3, 1), ("x", "z", 4, 1)]).unwrap()
}

pub fn q(p: i64, d: i64) -> BigRational {
    BigRational::new(p.into(), d.into())
}

/// Random instances with `n ≤ 7`, `M ≤ 18`, departures in `1..=12`, travel in `1..=3`.
pub fn corpus(count: usize, seed: u64) -> Vec<TemporalGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let nodes = rng.gen_range(2..=7);
            let edges = rng.gen_range(1..=18);
            random_temporal_graph(&GeneratorParams::new(nodes, edges, 12, rng.gen())).unwrap()
        })
        .collect()
}

pub fn oracle(g: &TemporalGraph, kind: CriterionKind, beta: Beta) -> OracleReport {
    oracle_betweenness(g, kind, beta, &OracleOptions::default()).unwrap()
}

/// Compares every per-source and per-node quantity of the engine with the oracle.
pub fn check_against_oracle(
    g: &TemporalGraph,
    kind: CriterionKind,
    beta: Beta,
    engine: EngineKind,
    report: &OracleReport,
) -> Result<(), String> {
    let rep = SortedRepresentation::build(g);
    for o in &report.sources {
        let s = o.source;
        let r = single_source(&rep, kind, beta, engine, s).map_err(|e| e.to_string())?;
        let ctx = |what: &str| format!("{kind} beta={beta} s={s}: {what} differs\n{}", g.to_edge_list());
        if r.cost != o.edge_cost {
            return Err(format!("{}\nengine {:?}\noracle {:?}", ctx("C"), r.cost, o.edge_cost));
        }
        if r.sigma != o.sigma {
            return Err(format!("{}\nengine {:?}\noracle {:?}", ctx("Σ"), r.sigma, o.sigma));
        }
        if r.sigma_star != o.sigma_star_edge {
            return Err(ctx("Σ*"));
        }
        if r.target_cost != o.target_cost {
            return Err(ctx("c*"));
        }
        if r.node_sigma_star != o.sigma_star {
            return Err(ctx("σ*"));
        }
        if r.edge_betweenness != o.edge_betweenness {
            return Err(format!(
                "{}\nengine {:?}\noracle {:?}",
                ctx("b_{s,e}"),
                r.edge_betweenness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                o.edge_betweenness.iter().map(|x| x.to_string()).collect::<Vec<_>>()
            ));
        }
        // engine successors also include extensions that lie on no optimal walk;
        // those carry zero betweenness
        let live: Vec<Vec<usize>> = r
            .successors
            .iter()
            .map(|fs| fs.iter().copied().filter(|&f| !r.edge_betweenness[f].is_zero()).collect())
            .collect();
        if live != o.successors {
            return Err(format!("{}\nengine {:?}\noracle {:?}", ctx("succ"), live, o.successors));
        }
        if r.node_contribution != o.node_contribution {
            return Err(ctx("node contribution"));
        }
    }
    let config = Config::new(kind, beta).with_engine(engine);
    let b = node_betweenness(g, &config).map_err(|e| e.to_string())?;
    if b.scores.exact().unwrap() != report.node_betweenness.as_slice() {
        return Err(format!("{kind} beta={beta}: node betweenness differs\n{}", g.to_edge_list()));
    }
    Ok(())
}

pub fn all_sources(g: &TemporalGraph) -> Vec<NodeId> {
    (0..g.num_nodes() as NodeId).collect()
}

use num_bigint::BigUint;
use temporal_betweenness::cost::{
    fold_walk_cost, walk_cost, AllCost, CostStructure, Criterion, CriterionVisitor, LatestCost, ShortestCost,
    ShortestLatestCost,
};
use temporal_betweenness::oracle::{source_oracle, SourceOracle};
use temporal_betweenness::{TemporalEdge, Time};

pub fn oracle_with_walks(g: &TemporalGraph, kind: CriterionKind, beta: Beta, s: NodeId) -> SourceOracle {
    let opts = OracleOptions {
        keep_walks: true,
        ..OracleOptions::default()
    };
    source_oracle(g, kind, beta, s, &opts).unwrap()
}

/// Prefix optimality, Θ-optimal implies Γ-optimal, node aggregation,
/// `σ*_{s,e,t} = σ_{s,e}·θ_{s,e,t}` and the edge recursion for `b_{s,e}`,
/// from oracle quantities only.
pub fn check_identities(g: &TemporalGraph, kind: CriterionKind, beta: Beta) -> Result<(), String> {
    let edges = g.edges();
    for s in 0..g.num_nodes() as NodeId {
        let o = oracle_with_walks(g, kind, beta, s);
        let ctx = |what: &str| format!("{kind} beta={beta} s={s}: {what}\n{}", g.to_edge_list());
        for w in &o.walks {
            let last = *w.edges.last().unwrap();
            let gamma_optimal = Some(w.cost) == o.edge_cost[last];
            let t = edges[last].head;
            let theta_optimal = t != s && Some(w.target) == o.target_cost[t as usize];
            if theta_optimal && !gamma_optimal {
                return Err(ctx(&format!("Θ-optimal walk {:?} is not Γ-optimal", w.edges)));
            }
            if gamma_optimal {
                for k in 1..w.edges.len() {
                    let prefix: Vec<TemporalEdge> = w.edges[..k].iter().map(|&i| edges[i]).collect();
                    let c = walk_cost(kind, &prefix).unwrap();
                    if Some(c) != o.edge_cost[w.edges[k - 1]] {
                        return Err(ctx(&format!("prefix {:?} of {:?} not Γ-optimal", &w.edges[..k], w.edges)));
                    }
                }
            }
        }
        for e in 0..g.num_edges() {
            for t in 0..g.num_nodes() {
                if t as NodeId == s {
                    continue;
                }
                if o.sigma_star_through[e][t] != &o.sigma[e] * &o.theta[e][t] {
                    return Err(ctx(&format!("σ*_(s,e,t) ≠ σ_(s,e)·θ_(s,e,t) for e={e} t={t}")));
                }
            }
            let v = edges[e].head as usize;
            let mut rhs = BigRational::zero();
            for &f in &o.successors[e] {
                rhs += &o.edge_betweenness[f] / big(&o.sigma[f]);
            }
            rhs *= big(&o.sigma[e]);
            if !o.sigma_star_edge[e].is_zero() {
                rhs += big(&o.sigma_star_edge[e]) / big(&o.sigma_star[v]);
            }
            if rhs != o.edge_betweenness[e] {
                return Err(ctx(&format!("edge recursion fails at e={e}")));
            }
        }
        for u in 0..g.num_nodes() {
            if u as NodeId == s {
                continue;
            }
            let mut sum = BigRational::zero();
            for (e, edge) in edges.iter().enumerate() {
                if edge.head as usize == u {
                    sum += &o.edge_betweenness[e];
                }
            }
            if o.reachable(u as NodeId) {
                sum -= BigRational::from_integer(1.into());
            }
            if sum != o.node_contribution[u] {
                return Err(ctx(&format!("aggregation identity fails at u={u}")));
            }
        }
    }
    Ok(())
}

pub fn big(x: &BigUint) -> BigRational {
    BigRational::from_integer(x.clone().into())
}

/// Restless vs nonrestless at `β = ∞`: every single-source quantity identical.
pub fn check_cross_engine(g: &TemporalGraph, kind: CriterionKind) -> Result<(), String> {
    let rep = SortedRepresentation::build(g);
    for s in 0..g.num_nodes() as NodeId {
        let a = single_source(&rep, kind, Beta::Infinite, EngineKind::Restless, s).unwrap();
        let b = single_source(&rep, kind, Beta::Infinite, EngineKind::Nonrestless, s).unwrap();
        if (&a.cost, &a.sigma, &a.sigma_star, &a.edge_betweenness, &a.successors, &a.node_contribution)
            != (&b.cost, &b.sigma, &b.sigma_star, &b.edge_betweenness, &b.successors, &b.node_contribution)
        {
            return Err(format!("{kind} s={s}: engines disagree\n{}", g.to_edge_list()));
        }
    }
    let restless = node_betweenness(g, &Config::new(kind, Beta::Infinite).with_engine(EngineKind::Restless)).unwrap();
    let nonrestless = node_betweenness(g, &Config::new(kind, Beta::Infinite).with_engine(EngineKind::Nonrestless)).unwrap();
    if restless.scores != nonrestless.scores {
        return Err(format!("{kind}: node betweenness differs between engines"));
    }
    Ok(())
}

fn random_edge(rng: &mut ChaCha8Rng) -> TemporalEdge {
    TemporalEdge::new(0, 1, rng.gen_range(-50..50), rng.gen_range(1..5)).unwrap()
}

/// A valid walk of 1..=4 edges ending at node 1, departing no earlier than `start`.
fn random_walk(rng: &mut ChaCha8Rng) -> Vec<TemporalEdge> {
    let len = rng.gen_range(1..=4);
    let mut t: Time = rng.gen_range(-20..20);
    let mut out = Vec::new();
    for k in 0..len {
        let dep = t + rng.gen_range(0..4);
        let travel = rng.gen_range(1..4);
        let (tail, head) = if k + 1 == len { (2 + k as u32, 1) } else { (2 + k as u32, 3 + k as u32) };
        out.push(TemporalEdge::new(tail, head, dep, travel).unwrap());
        t = dep + travel;
    }
    out
}

struct Laws {
    cases: usize,
    seed: u64,
}

impl CriterionVisitor for Laws {
    type Output = Result<(), String>;
    fn visit<C: Criterion>(self) -> Self::Output {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut checked = 0;
        while checked < self.cases {
            // increasing property of TC
            let w = random_walk(&mut rng);
            let x = random_walk(&mut rng);
            let (Some(cw), Some(cx)) = (fold_walk_cost::<C::Gamma>(&w), fold_walk_cost::<C::Gamma>(&x)) else {
                unreachable!()
            };
            let e = random_edge(&mut rng);
            if cw < cx && C::target_cost(&e, cw) >= C::target_cost(&e, cx) {
                return Err(format!("{}: TC not increasing for {cw:?} < {cx:?}", C::KIND));
            }
            if cx < cw && C::target_cost(&e, cx) >= C::target_cost(&e, cw) {
                return Err(format!("{}: TC not increasing for {cx:?} < {cw:?}", C::KIND));
            }
            // walk extension: an edge leaving node 1 after both arrivals
            let arr = w.last().unwrap().arr().max(x.last().unwrap().arr());
            let ext = TemporalEdge::new(1, 9, arr + rng.gen_range(0..3), rng.gen_range(1..4)).unwrap();
            let (ew, ex) = (C::Gamma::extend(cw, &ext), C::Gamma::extend(cx, &ext));
            if (cw < cx && ew >= ex) || (cx < cw && ex >= ew) {
                return Err(format!("{}: walk extension fails", C::KIND));
            }
            checked += 1;
        }
        Ok(())
    }
}

fn isotone<S: CostStructure>(cases: usize, rng: &mut ChaCha8Rng, sample: impl Fn(&mut ChaCha8Rng) -> S::Cost) -> Result<(), String> {
    for _ in 0..cases {
        let (a, b, c) = (sample(rng), sample(rng), sample(rng));
        if a < b && S::combine(a, c) >= S::combine(b, c) {
            return Err(format!("{:?}: {a:?} < {b:?} but not after ⊕ {c:?}", S::KIND));
        }
        // total order: exactly one of <, =, >; transitivity on the triple
        let trich = [a < b, a == b, a > b].iter().filter(|&&x| x).count();
        if trich != 1 || (a <= b && b <= c && a > c) {
            return Err(format!("{:?}: order laws fail on {a:?} {b:?} {c:?}", S::KIND));
        }
    }
    Ok(())
}

/// Isotonicity and order laws for the four cost structures, the increasing
/// property of all TC functions and walk extension, `cases` random cases each.
pub fn check_algebra(cases: usize, seed: u64) -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    isotone::<AllCost>(cases, &mut rng, |_| ())?;
    isotone::<ShortestCost>(cases, &mut rng, |r| r.gen_range(1..12))?;
    isotone::<LatestCost>(cases, &mut rng, |r| r.gen_range(-12..12))?;
    isotone::<ShortestLatestCost>(cases, &mut rng, |r| (r.gen_range(-6..6), r.gen_range(1..6)))?;
    for (i, kind) in CriterionKind::ALL.into_iter().enumerate() {
        kind.dispatch(Laws { cases, seed: seed ^ (i as u64 + 1) })?;
    }
    Ok(())
}
