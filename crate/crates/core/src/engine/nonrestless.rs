//! Candidate predecessors for the unbounded-wait forward scan.
//!
//! Without a waiting bound nothing expires, so each node only needs the best
//! cost seen so far, its walk count and the class of edges attaining it. An
//! edge's successor window ends when its class is beaten, which is recorded
//! once per class and resolved per edge at the end of the scan.

use crate::cost::{CostOf, Criterion};
use crate::graph::NodeId;
use crate::numeric::Numeric;

use super::{OpCounters, Window};

const NO_CLASS: u32 = u32::MAX;

pub(crate) struct NonrestlessFrontier<C: Criterion, N: Numeric> {
    best: Vec<Option<CostOf<C>>>,
    count: Vec<N::Count>,
    class: Vec<u32>,
    class_of: Vec<u32>,
    class_end: Vec<u32>,
    touched: Vec<NodeId>,
}

impl<C: Criterion, N: Numeric> NonrestlessFrontier<C, N> {
    pub(crate) fn new(n: usize, m: usize) -> Self {
        NonrestlessFrontier {
            best: vec![None; n],
            count: vec![N::zero_count(); n],
            class: vec![NO_CLASS; n],
            class_of: vec![NO_CLASS; m],
            class_end: Vec::new(),
            touched: Vec::new(),
        }
    }

    pub(crate) fn reset(&mut self) {
        for v in self.touched.drain(..) {
            let v = v as usize;
            self.best[v] = None;
            self.class[v] = NO_CLASS;
        }
        self.class_of.iter_mut().for_each(|c| *c = NO_CLASS);
        self.class_end.clear();
    }

    /// `(c[v], σ[v])` over the edges scanned so far.
    pub(crate) fn current(&self, v: NodeId) -> Option<(CostOf<C>, &N::Count)> {
        let v = v as usize;
        self.best[v].map(|c| (c, &self.count[v]))
    }

    #[allow(clippy::too_many_arguments)]
    pub(crate) fn push(
        &mut self,
        v: NodeId,
        e: u32,
        cost: CostOf<C>,
        count: &N::Count,
        next: u32,
        windows: &mut [Window],
        ops: &mut OpCounters,
    ) -> crate::Result<()> {
        let vi = v as usize;
        match self.best[vi] {
            Some(b) if b < cost => return Ok(()),
            Some(b) if b == cost => {
                N::add_count(&mut self.count[vi], count)?;
            }
            prev => {
                if prev.is_none() {
                    self.touched.push(v);
                } else {
                    self.class_end[self.class[vi] as usize] = next;
                    ops.popped += 1;
                }
                self.best[vi] = Some(cost);
                self.count[vi].clone_from(count);
                self.class[vi] = self.class_end.len() as u32;
                self.class_end.push(next);
            }
        }
        ops.pushed += 1;
        self.class_of[e as usize] = self.class[vi];
        windows[e as usize].lo = next;
        Ok(())
    }

    pub(crate) fn close(&mut self, v: NodeId, end: u32) {
        let c = self.class[v as usize];
        if c != NO_CLASS {
            self.class_end[c as usize] = end;
        }
    }

    /// Writes every edge's window end from its class.
    pub(crate) fn resolve(&self, windows: &mut [Window]) {
        for (w, &c) in windows.iter_mut().zip(&self.class_of) {
            if c != NO_CLASS {
                w.hi = self.class_end[c as usize];
            }
        }
    }
}
