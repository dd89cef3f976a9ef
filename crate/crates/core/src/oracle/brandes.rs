//! Static betweenness on the underlying graph, by BFS and dependency
//! accumulation. Exact: path counts are big integers, dependencies rationals.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::graph::{NodeId, StaticGraph};

pub fn brandes_static(graph: &StaticGraph) -> Vec<BigRational> {
    let n = graph.num_nodes();
    let mut bc = vec![BigRational::zero(); n];
    let mut sigma = vec![BigUint::zero(); n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![BigRational::zero(); n];
    let mut preds: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    let mut order = Vec::with_capacity(n);
    let mut queue = VecDeque::new();

    for s in 0..n {
        for v in 0..n {
            sigma[v].set_zero();
            dist[v] = usize::MAX;
            delta[v].set_zero();
            preds[v].clear();
        }
        order.clear();
        sigma[s] = BigUint::one();
        dist[s] = 0;
        queue.push_back(s as NodeId);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let dv = dist[v as usize];
            for &w in graph.successors(v) {
                let wi = w as usize;
                if dist[wi] == usize::MAX {
                    dist[wi] = dv + 1;
                    queue.push_back(w);
                }
                if dist[wi] == dv + 1 {
                    let sv = sigma[v as usize].clone();
                    sigma[wi] += sv;
                    preds[wi].push(v);
                }
            }
        }
        for &w in order.iter().rev() {
            let wi = w as usize;
            let coeff = (BigRational::one() + &delta[wi]) / BigInt::from(sigma[wi].clone());
            for &v in &preds[wi] {
                let add = &coeff * BigInt::from(sigma[v as usize].clone());
                delta[v as usize] += add;
            }
            if wi != s {
                let d = delta[wi].clone();
                bc[wi] += d;
            }
        }
    }
    bc
}
