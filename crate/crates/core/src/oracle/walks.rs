//! Exhaustive enumeration of strict, waiting-bounded walks.

use crate::error::{Error, Result};
use crate::graph::{Beta, NodeId, TemporalGraph};

pub const DEFAULT_WALK_CAP: usize = 10_000_000;

/// Every walk from `s`, as input edge indices. A walk's prefixes are listed
/// too. Departures strictly increase along a walk, so no edge repeats and the
/// search terminates.
pub fn enumerate_walks(graph: &TemporalGraph, s: NodeId, beta: Beta, cap: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_walk(graph, s, beta, cap, |w| out.push(w.to_vec()))?;
    Ok(out)
}

/// Depth-first visit of every walk from `s`; returns the number visited.
pub fn for_each_walk(
    graph: &TemporalGraph,
    s: NodeId,
    beta: Beta,
    cap: usize,
    mut visit: impl FnMut(&[usize]),
) -> Result<usize> {
    let edges = graph.edges();
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); graph.num_nodes()];
    for (i, e) in edges.iter().enumerate() {
        out_edges[e.tail as usize].push(i);
    }
    for list in &mut out_edges {
        list.sort_by_key(|&i| edges[i].dep);
    }

    let mut count = 0usize;
    let mut walk: Vec<usize> = Vec::new();
    // stack of (depth, edge)
    let mut stack: Vec<(usize, usize)> = out_edges[s as usize].iter().rev().map(|&i| (0, i)).collect();
    while let Some((depth, i)) = stack.pop() {
        walk.truncate(depth);
        walk.push(i);
        count += 1;
        if count > cap {
            return Err(Error::WalkCapExceeded { cap });
        }
        visit(&walk);
        let arr = edges[i].arr();
        for &f in out_edges[edges[i].head as usize].iter().rev() {
            if beta.extends(arr, edges[f].dep) {
                stack.push((depth + 1, f));
            }
        }
    }
    Ok(count)
}
