//! Exact temporal betweenness centrality.
//!
//! Betweenness is computed for a family of walk-optimality criteria (shortest,
//! foremost, fastest, latest and their shortest-tie-broken variants), with an
//! optional bound `β` on the waiting time at intermediate nodes. Each source
//! costs `O(M)` arithmetic operations; all sources together `O(nM)`.
//!
//! ```
//! use temporal_betweenness::{node_betweenness, Beta, Config, CriterionKind, TemporalGraph};
//!
//! let g = TemporalGraph::from_labeled(&[
//!     ("a", "b", 1, 1),
//!     ("b", "c", 2, 1),
//!     ("a", "c", 2, 1),
//!     ("c", "d", 3, 1),
//!     ("b", "d", 4, 1),
//! ])
//! .unwrap();
//! let config = Config::new(CriterionKind::Sh, Beta::Infinite);
//! let b = node_betweenness(&g, &config).unwrap();
//! assert_eq!(b.scores.format(1), "1/2");
//! ```

pub mod bench;
pub mod cost;
pub mod driver;
pub mod engine;
pub mod epoch;
pub mod error;
pub mod generator;
pub mod graph;
pub mod metrics;
pub mod numeric;
pub mod oracle;
pub mod scores;

pub use cost::{Criterion, CriterionKind};
pub use driver::{node_betweenness, single_source, Config, NodeBetweenness, SourceReport};
pub use engine::{EdgeBetweennessState, EngineKind};
pub use error::{Error, Result};
pub use graph::{parse_edge_list, Beta, NodeId, ParseOptions, SortedRepresentation, TemporalEdge, TemporalGraph, Time};
pub use numeric::{Exact, Fast, Mode, Numeric, Scores};
