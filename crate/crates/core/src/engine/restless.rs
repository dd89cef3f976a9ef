//! Candidate predecessors for the waiting-bounded forward scan.
//!
//! Each node keeps the edges that may still be extended at its not yet
//! finalised positions, in arrival order, grouped into runs of equal cost.
//! Group costs strictly increase from front to back: an edge that arrives later
//! with a smaller cost outlives every costlier edge before it, so those are
//! dropped when it is pushed. The front group is the set of Γ-optimal
//! predecessors for the next position to finalise.

use std::collections::VecDeque;

use crate::cost::{CostOf, Criterion};
use crate::epoch::EpochVec;
use crate::graph::{Beta, NodeId, SortedRepresentation, Time};
use crate::numeric::Numeric;

use super::{OpCounters, Window};

#[derive(Clone, Debug)]
struct Group<K, Cnt> {
    cost: K,
    len: u32,
    eta: Cnt,
}

/// A window of a node's departure list whose positions share the same
/// optimal predecessors. `l..=r` are positions in the node's departure list.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalQuintuple<K, Cnt> {
    pub l: u32,
    pub r: u32,
    pub cost: K,
    /// Predecessor edges (arrival positions), by arrival.
    pub preds: Vec<u32>,
    pub eta: Cnt,
}

pub(crate) struct RestlessFrontier<C: Criterion, N: Numeric> {
    beta: Beta,
    groups: Vec<VecDeque<Group<CostOf<C>, N::Count>>>,
    members: Vec<VecDeque<(u32, Time)>>,
    touched: Vec<NodeId>,
}

impl<C: Criterion, N: Numeric> RestlessFrontier<C, N> {
    pub(crate) fn new(n: usize) -> Self {
        RestlessFrontier {
            beta: Beta::Infinite,
            groups: (0..n).map(|_| VecDeque::new()).collect(),
            members: (0..n).map(|_| VecDeque::new()).collect(),
            touched: Vec::new(),
        }
    }

    pub(crate) fn reset(&mut self, beta: Beta) {
        self.beta = beta;
        for v in self.touched.drain(..) {
            self.groups[v as usize].clear();
            self.members[v as usize].clear();
        }
    }

    /// Drops predecessors that can no longer wait until `dep`, then returns the
    /// optimal cost and walk count for a position of `v` departing at `dep`.
    pub(crate) fn finalise(
        &mut self,
        v: NodeId,
        p: u32,
        dep: Time,
        sigma: &EpochVec<N::Count>,
        windows: &mut [Window],
        ops: &mut OpCounters,
    ) -> Option<(CostOf<C>, &N::Count)> {
        let vi = v as usize;
        let members = &mut self.members[vi];
        let groups = &mut self.groups[vi];
        while let Some(&(e, arr)) = members.front() {
            if self.beta.extends(arr, dep) {
                break;
            }
            members.pop_front();
            ops.expired += 1;
            windows[e as usize].hi = p;
            let front = groups.front_mut().expect("member without a group");
            front.len -= 1;
            N::sub_count(&mut front.eta, sigma.get(e as usize));
            if front.len == 0 {
                groups.pop_front();
                if let Some(next) = groups.front() {
                    for &(m, _) in members.iter().take(next.len as usize) {
                        windows[m as usize].lo = p;
                        ops.promoted += 1;
                    }
                }
            }
        }
        groups.front().map(|g| (g.cost, &g.eta))
    }

    /// Adds a reachable edge arriving at `v`. `next` is the first position of
    /// `v` not yet finalised.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn push(
        &mut self,
        v: NodeId,
        e: u32,
        arr: Time,
        cost: CostOf<C>,
        count: &N::Count,
        next: u32,
        windows: &mut [Window],
        ops: &mut OpCounters,
    ) -> crate::Result<()> {
        let vi = v as usize;
        let members = &mut self.members[vi];
        let groups = &mut self.groups[vi];
        if members.is_empty() {
            self.touched.push(v);
        }
        while let Some(back) = groups.back() {
            if back.cost <= cost {
                break;
            }
            let was_front = groups.len() == 1;
            for _ in 0..back.len {
                let (m, _) = members.pop_back().expect("group without members");
                ops.popped += 1;
                if was_front {
                    windows[m as usize].hi = next;
                }
            }
            groups.pop_back();
        }
        match groups.back_mut() {
            Some(back) if back.cost == cost => {
                back.len += 1;
                N::add_count(&mut back.eta, count)?;
            }
            _ => groups.push_back(Group {
                cost,
                len: 1,
                eta: count.clone(),
            }),
        }
        members.push_back((e, arr));
        ops.pushed += 1;
        if groups.len() == 1 {
            windows[e as usize].lo = next;
        }
        Ok(())
    }

    /// End of scan: the surviving front predecessors reach the last position.
    pub(crate) fn close(&mut self, v: NodeId, end: u32, windows: &mut [Window]) {
        let vi = v as usize;
        if let Some(front) = self.groups[vi].front() {
            for &(m, _) in self.members[vi].iter().take(front.len as usize) {
                windows[m as usize].hi = end;
            }
        }
        self.groups[vi].clear();
        self.members[vi].clear();
    }

    /// The current candidate structure of `v` as interval quintuples over the
    /// positions `next..`: within each quintuple the optimal predecessors are
    /// the same. Positions no predecessor reaches are omitted.
    pub(crate) fn quintuples(
        &self,
        rep: &SortedRepresentation,
        v: NodeId,
        next: u32,
        sigma: &EpochVec<N::Count>,
    ) -> Vec<IntervalQuintuple<CostOf<C>, N::Count>> {
        let vi = v as usize;
        let list = rep.dep_list(v);
        let members = &self.members[vi];
        let mut out: Vec<IntervalQuintuple<CostOf<C>, N::Count>> = Vec::new();
        let mut p = next as usize;
        let mut offset = 0usize;
        for g in &self.groups[vi] {
            let group: Vec<(u32, Time)> = members.range(offset..offset + g.len as usize).copied().collect();
            offset += g.len as usize;
            while p < list.len() {
                let dep = rep.edge(list[p] as usize).dep;
                let live: Vec<u32> = group
                    .iter()
                    .filter(|&&(_, arr)| self.beta.extends(arr, dep))
                    .map(|&(e, _)| e)
                    .collect();
                if live.is_empty() {
                    break;
                }
                match out.last_mut() {
                    Some(q) if q.r as usize + 1 == p && q.preds == live => q.r = p as u32,
                    _ => {
                        let mut eta = N::zero_count();
                        for &e in &live {
                            N::add_count(&mut eta, sigma.get(e as usize)).expect("part of a group total");
                        }
                        out.push(IntervalQuintuple {
                            l: p as u32,
                            r: p as u32,
                            cost: g.cost,
                            preds: live,
                            eta,
                        });
                    }
                }
                p += 1;
            }
        }
        out
    }

    /// Panics if the structure of `v` is inconsistent.
    pub(crate) fn check(&self, rep: &SortedRepresentation, v: NodeId, next: u32, sigma: &EpochVec<N::Count>) {
        let vi = v as usize;
        let members = &self.members[vi];
        let groups = &self.groups[vi];
        let total: usize = groups.iter().map(|g| g.len as usize).sum();
        assert_eq!(total, members.len(), "group sizes disagree with member count at node {v}");
        assert!(
            groups.iter().zip(groups.iter().skip(1)).all(|(a, b)| a.cost < b.cost),
            "group costs not strictly increasing at node {v}"
        );
        assert!(
            members.iter().zip(members.iter().skip(1)).all(|(a, b)| a.1 <= b.1),
            "members out of arrival order at node {v}"
        );
        let mut offset = 0usize;
        for g in groups {
            assert!(g.len > 0);
            let mut eta = N::zero_count();
            for &(e, arr) in members.range(offset..offset + g.len as usize) {
                assert_eq!(rep.edge(e as usize).arr(), arr);
                assert!(!N::is_zero(sigma.get(e as usize)));
                N::add_count(&mut eta, sigma.get(e as usize)).unwrap();
            }
            assert_eq!(eta, g.eta, "eta differs from member counts at node {v}");
            offset += g.len as usize;
        }
        if let Some(&p) = rep.dep_list(v).get(next as usize) {
            let dep = rep.edge(p as usize).dep;
            assert!(members.iter().all(|&(_, arr)| arr <= dep));
        }
        let quintuples = self.quintuples(rep, v, next, sigma);
        assert!(quintuples.windows(2).all(|w| w[0].r < w[1].l));
        for q in &quintuples {
            for pos in q.l..=q.r {
                let dep = rep.edge(rep.dep_list(v)[pos as usize] as usize).dep;
                assert!(q
                    .preds
                    .iter()
                    .all(|&e| self.beta.extends(rep.edge(e as usize).arr(), dep)));
            }
        }
    }
}
