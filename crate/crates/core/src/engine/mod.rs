//! Single-source edge betweenness.
//!
//! All per-edge arrays are indexed by arrival position (see
//! [`SortedRepresentation`]). A run has three phases:
//!
//! * forward: scan edges by arrival. The tail side finalises the tail's
//!   positions up to the scanned edge, giving its optimal cost `C[e]` and walk
//!   count `Σ[e]`; the head side hands the edge to the head's candidate
//!   structure. Every edge also gets the window `[L[e], R[e]]` of positions in
//!   its head's departure list for which it was an optimal predecessor.
//! * intermediate: `c*[v]`, `σ*[v]` and `Σ*[e]` from the target costs.
//! * backward: scan edges in reverse, keeping per node a sliding sum of
//!   `b[f] / Σ[f]` over the window, so `b[e] = Σ[e]·δ + Σ*[e]/σ*[v]`.

mod nonrestless;
mod restless;

pub use restless::IntervalQuintuple;

use std::fmt;
use std::str::FromStr;

use crate::cost::{CostOf, CostStructure, Criterion, CriterionKind, TargetOf};
use crate::epoch::EpochVec;
use crate::error::{Error, Result};
use crate::graph::{Beta, NodeId, SortedRepresentation};
use crate::numeric::Numeric;

use nonrestless::NonrestlessFrontier;
use restless::RestlessFrontier;

/// Which forward algorithm to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum EngineKind {
    /// Nonrestless for `β = ∞` with Sh or SFo, restless otherwise.
    #[default]
    Auto,
    /// Unbounded waiting only; any criterion.
    Nonrestless,
    Restless,
}

impl EngineKind {
    pub fn resolve(self, criterion: CriterionKind, beta: Beta) -> Result<EngineKind> {
        match self {
            EngineKind::Auto => Ok(
                if beta.is_infinite() && matches!(criterion, CriterionKind::Sh | CriterionKind::SFo) {
                    EngineKind::Nonrestless
                } else {
                    EngineKind::Restless
                },
            ),
            EngineKind::Nonrestless if !beta.is_infinite() => Err(Error::Config(format!(
                "the nonrestless engine needs an unbounded waiting time, got beta={beta}"
            ))),
            k => Ok(k),
        }
    }
}

impl fmt::Display for EngineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EngineKind::Auto => "auto",
            EngineKind::Nonrestless => "nonrestless",
            EngineKind::Restless => "restless",
        })
    }
}

impl FromStr for EngineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(EngineKind::Auto),
            "nonrestless" => Ok(EngineKind::Nonrestless),
            "restless" => Ok(EngineKind::Restless),
            _ => Err(Error::Config(format!("unknown engine {s:?}"))),
        }
    }
}

/// Half-open range of positions in the head's departure list.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Window {
    pub(crate) lo: u32,
    pub(crate) hi: u32,
}

/// Work counters for one source.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OpCounters {
    pub scanned: u64,
    pub finalised: u64,
    pub pushed: u64,
    pub popped: u64,
    pub expired: u64,
    pub promoted: u64,
    pub window_moves: u64,
}

impl OpCounters {
    pub fn total(&self) -> u64 {
        self.scanned
            + self.finalised
            + self.pushed
            + self.popped
            + self.expired
            + self.promoted
            + self.window_moves
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Phase {
    Idle,
    Forward,
    Scanned,
    Intermediate,
    Done,
}

/// Reusable per-worker state for single-source runs.
pub struct EdgeBetweennessState<'g, C: Criterion, N: Numeric> {
    rep: &'g SortedRepresentation,
    source: NodeId,
    beta: Beta,
    kind: EngineKind,
    phase: Phase,
    check: bool,
    next_edge: usize,
    ops: OpCounters,

    cost: Vec<Option<CostOf<C>>>,
    sigma: EpochVec<N::Count>,
    /// `e` extends the optimal walks of its window predecessors.
    ok: Vec<bool>,
    windows: Vec<Window>,
    sigma_star: EpochVec<N::Count>,
    b: EpochVec<N::Score>,
    contrib: EpochVec<N::Score>,

    next_pos: Vec<u32>,
    c_star: Vec<Option<TargetOf<C>>>,
    node_sigma_star: EpochVec<N::Count>,
    delta: EpochVec<N::Score>,
    win_lo: Vec<u32>,
    win_hi: Vec<u32>,

    nonrestless: NonrestlessFrontier<C, N>,
    restless: RestlessFrontier<C, N>,
}

impl<'g, C: Criterion, N: Numeric> EdgeBetweennessState<'g, C, N> {
    pub fn new(rep: &'g SortedRepresentation) -> Self {
        let n = rep.num_nodes();
        let m = rep.num_edges();
        EdgeBetweennessState {
            rep,
            source: 0,
            beta: Beta::Infinite,
            kind: EngineKind::Restless,
            phase: Phase::Idle,
            check: false,
            next_edge: 0,
            ops: OpCounters::default(),
            cost: vec![None; m],
            sigma: EpochVec::new(m, N::zero_count()),
            ok: vec![false; m],
            windows: vec![Window::default(); m],
            sigma_star: EpochVec::new(m, N::zero_count()),
            b: EpochVec::new(m, N::zero_score()),
            contrib: EpochVec::new(m, N::zero_score()),
            next_pos: vec![0; n],
            c_star: vec![None; n],
            node_sigma_star: EpochVec::new(n, N::zero_count()),
            delta: EpochVec::new(n, N::zero_score()),
            win_lo: vec![0; n],
            win_hi: vec![0; n],
            nonrestless: NonrestlessFrontier::new(n, m),
            restless: RestlessFrontier::new(n),
        }
    }

    /// Re-verify the candidate structures after every step (slow).
    pub fn set_invariant_checks(&mut self, on: bool) {
        self.check = on;
    }

    pub fn representation(&self) -> &'g SortedRepresentation {
        self.rep
    }

    /// All three phases for source `s`.
    pub fn run(&mut self, s: NodeId, beta: Beta, kind: EngineKind) -> Result<()> {
        self.begin(s, beta, kind)?;
        while self.scan_next()? {}
        self.finish_forward();
        self.intermediate_phase();
        self.backward_phase();
        Ok(())
    }

    /// Resets all state and prepares a forward scan from `s`.
    pub fn begin(&mut self, s: NodeId, beta: Beta, kind: EngineKind) -> Result<()> {
        if s as usize >= self.rep.num_nodes() {
            return Err(Error::Input(format!("source {s} out of range")));
        }
        let kind = kind.resolve(C::KIND, beta)?;
        self.source = s;
        self.beta = beta;
        self.kind = kind;
        self.next_edge = 0;
        self.ops = OpCounters::default();
        self.cost.iter_mut().for_each(|c| *c = None);
        self.ok.iter_mut().for_each(|o| *o = false);
        self.windows.iter_mut().for_each(|w| *w = Window::default());
        self.sigma.reset();
        self.sigma_star.reset();
        self.b.reset();
        self.contrib.reset();
        self.next_pos.iter_mut().for_each(|p| *p = 0);
        self.c_star.iter_mut().for_each(|c| *c = None);
        self.node_sigma_star.reset();
        self.delta.reset();
        self.nonrestless.reset();
        self.restless.reset(beta);
        self.phase = Phase::Forward;
        Ok(())
    }

    /// Scans the next edge by arrival. Returns `false` once all are scanned.
    pub fn scan_next(&mut self) -> Result<bool> {
        assert_eq!(self.phase, Phase::Forward, "scan_next outside the forward phase");
        let i = self.next_edge;
        if i == self.rep.num_edges() {
            return Ok(false);
        }
        self.next_edge += 1;
        self.ops.scanned += 1;
        let e = *self.rep.edge(i);

        self.finalise_up_to(e.tail, self.rep.position_in_tail(i) as u32);
        if e.tail == self.source {
            let single = C::Gamma::edge_cost(&e);
            match self.cost[i] {
                Some(c) if c < single => {}
                Some(c) if c == single => N::add_count(self.sigma.get_mut(i), &N::one())?,
                _ => {
                    self.cost[i] = Some(single);
                    self.sigma.set(i, N::one());
                    self.ok[i] = false;
                }
            }
        }

        let Some(cost) = self.cost[i] else {
            return Ok(true);
        };
        let v = e.head;
        let arr = e.arr();
        let list = self.rep.dep_list(v);
        let mut a = self.next_pos[v as usize] as usize;
        while a < list.len() && self.rep.edge(list[a] as usize).dep < arr {
            a += 1;
        }
        if a > 0 {
            self.finalise_up_to(v, a as u32 - 1);
        }
        let next = self.next_pos[v as usize];
        let count = self.sigma.get(i);
        match self.kind {
            EngineKind::Nonrestless => self.nonrestless.push(
                v,
                i as u32,
                cost,
                count,
                next,
                &mut self.windows,
                &mut self.ops,
            )?,
            _ => {
                self.restless
                    .push(v, i as u32, arr, cost, count, next, &mut self.windows, &mut self.ops)?;
                if self.check {
                    self.restless.check(self.rep, v, next, &self.sigma);
                }
            }
        }
        Ok(true)
    }

    /// Finalises positions `l[v]..=j` of `v`'s departure list; no-op when `j < l[v]`.
    pub fn finalise_up_to(&mut self, v: NodeId, j: u32) {
        let vi = v as usize;
        let list = self.rep.dep_list(v);
        while self.next_pos[vi] <= j {
            let p = self.next_pos[vi];
            let f = list[p as usize] as usize;
            let edge = self.rep.edge(f);
            let found = match self.kind {
                EngineKind::Nonrestless => self.nonrestless.current(v),
                _ => self.restless.finalise(
                    v,
                    p,
                    edge.dep,
                    &self.sigma,
                    &mut self.windows,
                    &mut self.ops,
                ),
            };
            if let Some((k, count)) = found {
                self.cost[f] = Some(C::Gamma::extend(k, edge));
                self.sigma.set(f, count.clone());
                self.ok[f] = true;
            }
            self.ops.finalised += 1;
            self.next_pos[vi] = p + 1;
        }
        if self.check && self.kind != EngineKind::Nonrestless {
            self.restless.check(self.rep, v, self.next_pos[vi], &self.sigma);
        }
    }

    /// Finalises everything left and closes all successor windows.
    pub fn finish_forward(&mut self) {
        assert_eq!(self.phase, Phase::Forward);
        assert_eq!(self.next_edge, self.rep.num_edges(), "forward scan not complete");
        for v in 0..self.rep.num_nodes() as NodeId {
            let len = self.rep.dep_list(v).len() as u32;
            if len > 0 {
                self.finalise_up_to(v, len - 1);
            }
            match self.kind {
                EngineKind::Nonrestless => self.nonrestless.close(v, len),
                _ => self.restless.close(v, len, &mut self.windows),
            }
        }
        if self.kind == EngineKind::Nonrestless {
            self.nonrestless.resolve(&mut self.windows);
        }
        self.phase = Phase::Scanned;
    }

    /// Target costs `c*`, optimal walk counts `σ*` and `Σ*`.
    pub fn intermediate_phase(&mut self) {
        assert_eq!(self.phase, Phase::Scanned);
        let s = self.source;
        for i in 0..self.rep.num_edges() {
            let e = self.rep.edge(i);
            if let (Some(c), true) = (self.cost[i], e.head != s) {
                let tc = C::target_cost(e, c);
                let slot = &mut self.c_star[e.head as usize];
                if slot.is_none_or(|best| tc < best) {
                    *slot = Some(tc);
                }
            }
        }
        for i in 0..self.rep.num_edges() {
            let e = self.rep.edge(i);
            if let (Some(c), true) = (self.cost[i], e.head != s) {
                if Some(C::target_cost(e, c)) == self.c_star[e.head as usize] {
                    let count = self.sigma.get(i).clone();
                    N::add_count(self.node_sigma_star.get_mut(e.head as usize), &count)
                        .expect("σ* cannot exceed the sum of Σ");
                    self.sigma_star.set(i, count);
                }
            }
        }
        self.phase = Phase::Intermediate;
    }

    /// Edge betweenness by reverse arrival order.
    pub fn backward_phase(&mut self) {
        assert_eq!(self.phase, Phase::Intermediate);
        for v in 0..self.rep.num_nodes() {
            let len = self.rep.dep_list(v as NodeId).len() as u32;
            self.win_lo[v] = len;
            self.win_hi[v] = len;
        }
        for i in (0..self.rep.num_edges()).rev() {
            if self.cost[i].is_none() {
                continue;
            }
            let v = self.rep.edge(i).head;
            let w = self.windows[i];
            let mut b = N::zero_score();
            if w.lo < w.hi {
                self.slide(v, w);
                b = N::scale(self.sigma.get(i), self.delta.get(v as usize));
            }
            let star = self.sigma_star.get(i);
            if !N::is_zero(star) {
                let total = self.node_sigma_star.get(v as usize);
                assert!(!N::is_zero(total), "σ*[v] = 0 with Σ*[e] > 0");
                N::add_score(&mut b, &N::fraction(star, total));
            }
            if self.ok[i] {
                self.contrib.set(i, N::divide(&b, self.sigma.get(i)));
            }
            self.b.set(i, b);
        }
        self.phase = Phase::Done;
    }

    fn slide(&mut self, v: NodeId, w: Window) {
        let vi = v as usize;
        let list = self.rep.dep_list(v);
        debug_assert!(w.hi <= self.win_hi[vi] && w.lo <= self.win_lo[vi], "windows not monotone");
        let delta = self.delta.get_mut(vi);
        if w.hi <= self.win_lo[vi] {
            *delta = N::zero_score();
            self.win_lo[vi] = w.hi;
        } else {
            while self.win_hi[vi] > w.hi {
                self.win_hi[vi] -= 1;
                self.ops.window_moves += 1;
                N::sub_score(delta, self.contrib.get(list[self.win_hi[vi] as usize] as usize));
            }
        }
        self.win_hi[vi] = w.hi;
        while self.win_lo[vi] > w.lo {
            self.win_lo[vi] -= 1;
            self.ops.window_moves += 1;
            N::add_score(delta, self.contrib.get(list[self.win_lo[vi] as usize] as usize));
        }
    }

    /// Adds `Σ_{e into u} b_{s,e} − χ_{s,u}` to `acc[u]` for every `u ≠ s`.
    pub fn accumulate_nodes(&self, acc: &mut [N::Score]) {
        assert_eq!(self.phase, Phase::Done);
        let s = self.source;
        for i in 0..self.rep.num_edges() {
            let head = self.rep.edge(i).head;
            if head != s && self.cost[i].is_some() {
                N::add_score(&mut acc[head as usize], self.b.get(i));
            }
        }
        for (u, a) in acc.iter_mut().enumerate() {
            if u as NodeId != s && !N::is_zero(self.node_sigma_star.get(u)) {
                N::sub_one(a);
            }
        }
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn beta(&self) -> Beta {
        self.beta
    }

    /// The engine actually used after resolving [`EngineKind::Auto`].
    pub fn engine(&self) -> EngineKind {
        self.kind
    }

    pub fn counters(&self) -> OpCounters {
        self.ops
    }

    /// Number of edges scanned so far in the forward phase.
    pub fn scanned(&self) -> usize {
        self.next_edge
    }

    /// `C[e]`; `None` when no walk from the source ends with `e`.
    pub fn cost(&self, e: usize) -> Option<CostOf<C>> {
        self.cost[e]
    }

    /// `Σ[e]`
    pub fn sigma(&self, e: usize) -> &N::Count {
        self.sigma.get(e)
    }

    /// `Σ*[e]`
    pub fn sigma_star(&self, e: usize) -> &N::Count {
        self.sigma_star.get(e)
    }

    /// `σ*[v]`
    pub fn node_sigma_star(&self, v: NodeId) -> &N::Count {
        self.node_sigma_star.get(v as usize)
    }

    /// `c*[v]`
    pub fn target_cost(&self, v: NodeId) -> Option<TargetOf<C>> {
        self.c_star[v as usize]
    }

    /// `b_{s,e}`
    pub fn edge_betweenness(&self, e: usize) -> &N::Score {
        self.b.get(e)
    }

    /// Whether `v ≠ s` is reachable from the source (`χ_{s,v}`).
    pub fn reachable(&self, v: NodeId) -> bool {
        v != self.source && !N::is_zero(self.node_sigma_star.get(v as usize))
    }

    /// First position of `v` not yet finalised.
    pub fn next_position(&self, v: NodeId) -> u32 {
        self.next_pos[v as usize]
    }

    /// `[L[e], R[e]]`, inclusive positions in the head's departure list, or
    /// `None` when `e` was never an optimal predecessor.
    pub fn window(&self, e: usize) -> Option<(u32, u32)> {
        let w = self.windows[e];
        (w.lo < w.hi).then(|| (w.lo, w.hi - 1))
    }

    /// Successors of `e` as arrival positions: edges in its window whose
    /// optimal walks extend those of `e`.
    pub fn successors(&self, e: usize) -> Vec<usize> {
        let Some((lo, hi)) = self.window(e) else {
            return Vec::new();
        };
        let list = self.rep.dep_list(self.rep.edge(e).head);
        (lo..=hi)
            .map(|p| list[p as usize] as usize)
            .filter(|&f| self.ok[f])
            .collect()
    }

    /// During the nonrestless forward scan: best cost and count into `v` so far.
    pub fn current_best(&self, v: NodeId) -> Option<(CostOf<C>, N::Count)> {
        assert_eq!(self.kind, EngineKind::Nonrestless, "only tracked by the nonrestless engine");
        self.nonrestless.current(v).map(|(c, n)| (c, n.clone()))
    }

    /// During the restless forward scan: the candidate structure of `v`.
    pub fn quintuples(&self, v: NodeId) -> Vec<IntervalQuintuple<CostOf<C>, N::Count>> {
        assert_eq!(self.kind, EngineKind::Restless, "only kept by the restless engine");
        self.restless.quintuples(self.rep, v, self.next_pos[v as usize], &self.sigma)
    }
}
