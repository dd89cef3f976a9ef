//! Temporal graph model, edge-list ingestion and the doubly-sorted representation.
//!
//! Nodes are dense `u32` ids assigned in order of first appearance; the original
//! string labels are kept in [`NodeLabels`] for output. Times are `i64`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::BufRead;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type NodeId = u32;
pub type Time = i64;

/// A temporal edge `(tail, head, dep, travel)`; it arrives at `dep + travel`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TemporalEdge {
    pub tail: NodeId,
    pub head: NodeId,
    pub dep: Time,
    pub travel: Time,
}

impl TemporalEdge {
    /// Checked constructor: rejects self-loops, non-positive travel times and
    /// arrival times that do not fit in an `i64`.
    pub fn new(tail: NodeId, head: NodeId, dep: Time, travel: Time) -> Result<Self> {
        if tail == head {
            return Err(Error::Input(format!("self-loop on node {tail}")));
        }
        if travel < 1 {
            return Err(Error::Input(format!("travel time {travel} is not positive")));
        }
        if dep.checked_add(travel).is_none() {
            return Err(Error::Input(format!("arrival time {dep}+{travel} overflows")));
        }
        Ok(TemporalEdge {
            tail,
            head,
            dep,
            travel,
        })
    }

    #[inline]
    pub fn arr(&self) -> Time {
        self.dep + self.travel
    }
}

/// Maximum waiting time at a node. `Infinite` is a sentinel and never takes
/// part in arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Beta {
    Finite(Time),
    Infinite,
}

impl Beta {
    /// Whether an edge departing at `dep` may follow a walk arriving at `arr`.
    #[inline]
    pub fn extends(self, arr: Time, dep: Time) -> bool {
        arr <= dep
            && match self {
                Beta::Infinite => true,
                Beta::Finite(b) => dep - arr <= b,
            }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Beta::Infinite)
    }
}

impl fmt::Display for Beta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Beta::Finite(b) => write!(f, "{b}"),
            Beta::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Beta {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") {
            return Ok(Beta::Infinite);
        }
        match s.parse::<Time>() {
            Ok(b) if b >= 0 => Ok(Beta::Finite(b)),
            _ => Err(Error::Config(format!(
                "waiting bound must be a non-negative integer or \"inf\", got {s:?}"
            ))),
        }
    }
}

/// Bidirectional map between dense node ids and their original labels.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NodeLabels {
    labels: Vec<String>,
    index: HashMap<String, NodeId>,
}

impl NodeLabels {
    pub fn new() -> Self {
        Self::default()
    }

    /// Labels `"0"`, `"1"`, ... for graphs built without names.
    pub fn numbered(n: usize) -> Self {
        let mut labels = NodeLabels::new();
        for v in 0..n {
            labels.intern(&v.to_string());
        }
        labels
    }

    /// Returns the id of `label`, assigning the next free id on first sight.
    pub fn intern(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = self.labels.len() as NodeId;
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<NodeId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id as usize]
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.labels.iter().map(String::as_str)
    }
}

/// A temporal multigraph. Immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TemporalGraph {
    edges: Vec<TemporalEdge>,
    labels: NodeLabels,
}

impl TemporalGraph {
    /// Builds a graph over nodes `0..n` labelled by their ids.
    pub fn from_edges(n: usize, edges: Vec<TemporalEdge>) -> Result<Self> {
        Self::with_labels(NodeLabels::numbered(n), edges)
    }

    pub fn with_labels(labels: NodeLabels, edges: Vec<TemporalEdge>) -> Result<Self> {
        let n = labels.len();
        for e in &edges {
            if e.tail as usize >= n || e.head as usize >= n {
                return Err(Error::Input(format!(
                    "edge {e:?} refers to a node outside 0..{n}"
                )));
            }
            TemporalEdge::new(e.tail, e.head, e.dep, e.travel)?;
        }
        Ok(TemporalGraph { edges, labels })
    }

    /// Convenience constructor from `(tail, head, dep, travel)` label tuples.
    pub fn from_labeled(edges: &[(&str, &str, Time, Time)]) -> Result<Self> {
        let mut labels = NodeLabels::new();
        let mut out = Vec::with_capacity(edges.len());
        for &(u, v, dep, travel) in edges {
            let u = labels.intern(u);
            let v = labels.intern(v);
            out.push(TemporalEdge::new(u, v, dep, travel)?);
        }
        Ok(TemporalGraph { edges: out, labels })
    }

    pub fn num_nodes(&self) -> usize {
        self.labels.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn labels(&self) -> &NodeLabels {
        &self.labels
    }

    /// Number of distinct departure times.
    pub fn distinct_times(&self) -> usize {
        self.edges.iter().map(|e| e.dep).collect::<BTreeSet<_>>().len()
    }

    /// Same graph with the edge list reordered by `perm` (new position i holds old edge `perm[i]`).
    pub fn permuted(&self, perm: &[usize]) -> TemporalGraph {
        assert_eq!(perm.len(), self.edges.len());
        TemporalGraph {
            edges: perm.iter().map(|&i| self.edges[i]).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Serializes to the edge-list format, one `tail head dep travel` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            out.push_str(&format!(
                "{} {} {} {}\n",
                self.labels.label(e.tail),
                self.labels.label(e.head),
                e.dep,
                e.travel
            ));
        }
        out
    }
}

/// Options for [`parse_edge_list`].
#[derive(Clone, Copy, Debug)]
pub struct ParseOptions {
    /// Emit both orientations of every line.
    pub undirected: bool,
    /// Travel time used when a line has only three tokens.
    pub default_travel: Time,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            undirected: false,
            default_travel: 1,
        }
    }
}

/// Parses `tail head dep [travel]` lines. Blank lines and lines starting with
/// `#` are skipped; tokens are separated by runs of spaces or tabs.
pub fn parse_edge_list<R: BufRead>(reader: R, options: ParseOptions) -> Result<TemporalGraph> {
    if options.default_travel < 1 {
        return Err(Error::Config(format!(
            "default travel time {} is not positive",
            options.default_travel
        )));
    }
    let mut labels = NodeLabels::new();
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| Error::parse(lineno, e.to_string()))?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        let trimmed = line.trim_start_matches([' ', '\t']);
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split([' ', '\t'])
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != 3 && tokens.len() != 4 {
            return Err(Error::parse(
                lineno,
                format!("expected 3 or 4 tokens, found {}", tokens.len()),
            ));
        }
        let dep: Time = tokens[2]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("departure {:?} is not an integer", tokens[2])))?;
        let travel: Time = match tokens.get(3) {
            Some(t) => t
                .parse()
                .map_err(|_| Error::parse(lineno, format!("travel {t:?} is not an integer")))?,
            None => options.default_travel,
        };
        if travel < 1 {
            return Err(Error::parse(lineno, format!("travel time {travel} is not positive")));
        }
        if tokens[0] == tokens[1] {
            return Err(Error::parse(lineno, format!("self-loop on {:?}", tokens[0])));
        }
        if dep.checked_add(travel).is_none() {
            return Err(Error::parse(lineno, "arrival time overflows"));
        }
        let u = labels.intern(tokens[0]);
        let v = labels.intern(tokens[1]);
        edges.push(TemporalEdge {
            tail: u,
            head: v,
            dep,
            travel,
        });
        if options.undirected {
            edges.push(TemporalEdge {
                tail: v,
                head: u,
                dep,
                travel,
            });
        }
    }
    Ok(TemporalGraph { edges, labels })
}

/// Parses an in-memory edge list.
pub fn parse_str(text: &str, options: ParseOptions) -> Result<TemporalGraph> {
    parse_edge_list(text.as_bytes(), options)
}

/// The doubly-sorted representation used by the engines.
///
/// Edges are identified by their position in `e_arr` (the arrival order);
/// every per-edge array in the engines is indexed that way.
#[derive(Clone, Debug)]
pub struct SortedRepresentation {
    n: usize,
    /// Edges reordered by non-decreasing arrival (stable).
    edges: Vec<TemporalEdge>,
    /// `e_arr[i]`: original index of the i-th edge by arrival.
    e_arr: Vec<u32>,
    /// Positions into `e_arr`, ordered by non-decreasing departure (stable).
    e_dep: Vec<u32>,
    /// CSR offsets into `dep_node_flat`, one slot per node plus a sentinel.
    node_offsets: Vec<usize>,
    /// Concatenation of the per-node by-departure lists (positions into `e_arr`).
    dep_node_flat: Vec<u32>,
    /// For each position in `e_arr`, its index inside its tail's by-departure list.
    arr_dep: Vec<u32>,
}

impl SortedRepresentation {
    pub fn build(graph: &TemporalGraph) -> Self {
        let m = graph.num_edges();
        let n = graph.num_nodes();
        assert!(m <= u32::MAX as usize, "edge count exceeds u32 indexing");
        let input = graph.edges();

        let mut e_arr: Vec<u32> = (0..m as u32).collect();
        e_arr.sort_by_key(|&i| input[i as usize].arr());
        let edges: Vec<TemporalEdge> = e_arr.iter().map(|&i| input[i as usize]).collect();

        let mut arr_pos = vec![0u32; m];
        for (pos, &orig) in e_arr.iter().enumerate() {
            arr_pos[orig as usize] = pos as u32;
        }
        let mut by_dep: Vec<u32> = (0..m as u32).collect();
        by_dep.sort_by_key(|&i| input[i as usize].dep);
        let e_dep: Vec<u32> = by_dep.iter().map(|&i| arr_pos[i as usize]).collect();

        let mut node_offsets = vec![0usize; n + 1];
        for e in &edges {
            node_offsets[e.tail as usize + 1] += 1;
        }
        for v in 0..n {
            node_offsets[v + 1] += node_offsets[v];
        }
        let mut fill = node_offsets.clone();
        let mut dep_node_flat = vec![0u32; m];
        let mut arr_dep = vec![0u32; m];
        for &pos in &e_dep {
            let tail = edges[pos as usize].tail as usize;
            let slot = fill[tail];
            dep_node_flat[slot] = pos;
            arr_dep[pos as usize] = (slot - node_offsets[tail]) as u32;
            fill[tail] += 1;
        }

        SortedRepresentation {
            n,
            edges,
            e_arr,
            e_dep,
            node_offsets,
            dep_node_flat,
            arr_dep,
        }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edge at position `i` of the arrival order.
    #[inline]
    pub fn edge(&self, i: usize) -> &TemporalEdge {
        &self.edges[i]
    }

    /// All edges in arrival order.
    pub fn edges(&self) -> &[TemporalEdge] {
        &self.edges
    }

    pub fn e_arr(&self) -> &[u32] {
        &self.e_arr
    }

    pub fn e_dep(&self) -> &[u32] {
        &self.e_dep
    }

    /// Edges with tail `v` by non-decreasing departure (positions into `e_arr`).
    #[inline]
    pub fn dep_list(&self, v: NodeId) -> &[u32] {
        let v = v as usize;
        &self.dep_node_flat[self.node_offsets[v]..self.node_offsets[v + 1]]
    }

    /// Index of edge `i` inside `dep_list(tail(i))`.
    #[inline]
    pub fn position_in_tail(&self, i: usize) -> usize {
        self.arr_dep[i] as usize
    }

    pub fn arr_dep(&self) -> &[u32] {
        &self.arr_dep
    }

    /// Original (input-order) index of the edge at arrival position `i`.
    pub fn original_index(&self, i: usize) -> usize {
        self.e_arr[i] as usize
    }

    /// Panics if any structural invariant is violated.
    pub fn assert_invariants(&self) {
        let m = self.edges.len();
        let is_perm = |xs: &[u32]| {
            let mut seen = vec![false; m];
            xs.len() == m
                && xs.iter().all(|&x| {
                    let fresh = (x as usize) < m && !seen[x as usize];
                    if fresh {
                        seen[x as usize] = true;
                    }
                    fresh
                })
        };
        assert!(is_perm(&self.e_arr), "e_arr is not a permutation");
        assert!(is_perm(&self.e_dep), "e_dep is not a permutation");
        assert!(self.edges.windows(2).all(|w| w[0].arr() <= w[1].arr()));
        assert!(self
            .e_dep
            .windows(2)
            .all(|w| self.edges[w[0] as usize].dep <= self.edges[w[1] as usize].dep));
        let mut total = 0;
        for v in 0..self.n as NodeId {
            let list = self.dep_list(v);
            total += list.len();
            assert!(list
                .windows(2)
                .all(|w| self.edges[w[0] as usize].dep <= self.edges[w[1] as usize].dep));
            assert!(list.iter().all(|&i| self.edges[i as usize].tail == v));
        }
        assert_eq!(total, m);
        for i in 0..m {
            let tail = self.edges[i].tail;
            assert_eq!(self.dep_list(tail)[self.arr_dep[i] as usize] as usize, i);
        }
    }
}

/// Static directed graph of the distinct `(tail, head)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StaticGraph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<NodeId>,
}

impl StaticGraph {
    /// Builds from arbitrary pairs; duplicates are collapsed.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (NodeId, NodeId)>) -> Self {
        let pairs: BTreeSet<(NodeId, NodeId)> = pairs.into_iter().collect();
        let mut offsets = vec![0usize; n + 1];
        for &(u, _) in &pairs {
            offsets[u as usize + 1] += 1;
        }
        for v in 0..n {
            offsets[v + 1] += offsets[v];
        }
        let targets = pairs.iter().map(|&(_, v)| v).collect();
        StaticGraph { n, offsets, targets }
    }

    pub fn num_nodes(&self) -> usize {
        self.n
    }

    pub fn num_edges(&self) -> usize {
        self.targets.len()
    }

    pub fn successors(&self, v: NodeId) -> &[NodeId] {
        &self.targets[self.offsets[v as usize]..self.offsets[v as usize + 1]]
    }
}

/// The underlying static graph: one edge per distinct `(tail, head)` pair.
pub fn underlying_graph(graph: &TemporalGraph) -> StaticGraph {
    StaticGraph::from_pairs(
        graph.num_nodes(),
        graph.edges().iter().map(|e| (e.tail, e.head)),
    )
}
