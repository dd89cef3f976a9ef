//! Cost structures `(C, γ, ⊕, ⪯)`, target cost structures `(C^F, ⪯^F)` and
//! the optimality criteria built from them.
//!
//! Costs are small integer tuples whose `Ord` is the cost order, so engines are
//! monomorphised per criterion and comparisons stay branch-cheap. Unreachable
//! states are `None` rather than an in-band infinite cost.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{TemporalEdge, Time};

/// A strictly right-isotone cost algebra over walks.
pub trait CostStructure: Send + Sync + 'static {
    type Cost: Copy + Ord + Hash + fmt::Debug + Send + Sync;
    const KIND: CostStructureKind;

    fn edge_cost(e: &TemporalEdge) -> Self::Cost;
    fn combine(a: Self::Cost, b: Self::Cost) -> Self::Cost;
    fn describe(c: Self::Cost) -> CostValue;

    /// `γ(W.e)` from `γ(W)`.
    #[inline]
    fn extend(c: Self::Cost, e: &TemporalEdge) -> Self::Cost {
        Self::combine(c, Self::edge_cost(e))
    }
}

/// A totally ordered set of target costs with distinguished extremes.
pub trait TargetStructure: Send + Sync + 'static {
    type Value: Copy + Ord + Hash + fmt::Debug + Send + Sync;
    const KIND: TargetStructureKind;
    /// `∞^Θ`
    const TOP: Self::Value;
    /// `0^Θ`
    const BOTTOM: Self::Value;

    fn describe(v: Self::Value) -> TargetValue;
}

/// `C = {0}`: every walk costs the same.
pub struct AllCost;
/// Number of hops.
pub struct ShortestCost;
/// Opposite of the departure time of the walk.
pub struct LatestCost;
/// Opposite departure time, then hops.
pub struct ShortestLatestCost;

impl CostStructure for AllCost {
    type Cost = ();
    const KIND: CostStructureKind = CostStructureKind::All;

    fn edge_cost(_: &TemporalEdge) {}
    fn combine(_: (), _: ()) {}
    fn describe(_: ()) -> CostValue {
        CostValue::Unit
    }
}

impl CostStructure for ShortestCost {
    type Cost = i64;
    const KIND: CostStructureKind = CostStructureKind::Shortest;

    #[inline]
    fn edge_cost(_: &TemporalEdge) -> i64 {
        1
    }
    #[inline]
    fn combine(a: i64, b: i64) -> i64 {
        a + b
    }
    fn describe(c: i64) -> CostValue {
        CostValue::Hops(c)
    }
}

impl CostStructure for LatestCost {
    type Cost = i64;
    const KIND: CostStructureKind = CostStructureKind::Latest;

    #[inline]
    fn edge_cost(e: &TemporalEdge) -> i64 {
        -e.dep
    }
    #[inline]
    fn combine(a: i64, _: i64) -> i64 {
        a
    }
    fn describe(c: i64) -> CostValue {
        CostValue::NegDeparture(c)
    }
}

impl CostStructure for ShortestLatestCost {
    type Cost = (i64, i64);
    const KIND: CostStructureKind = CostStructureKind::ShortestLatest;

    #[inline]
    fn edge_cost(e: &TemporalEdge) -> (i64, i64) {
        (-e.dep, 1)
    }
    #[inline]
    fn combine(a: (i64, i64), b: (i64, i64)) -> (i64, i64) {
        (a.0, a.1 + b.1)
    }
    fn describe(c: (i64, i64)) -> CostValue {
        CostValue::NegDepartureHops(c.0, c.1)
    }
}

/// `(Z, ≤)`
pub struct Natural;
/// `(Z × N, lexicographic ≤)`
pub struct Lexicographic;

impl TargetStructure for Natural {
    type Value = i64;
    const KIND: TargetStructureKind = TargetStructureKind::Natural;
    const TOP: i64 = i64::MAX;
    const BOTTOM: i64 = i64::MIN;

    fn describe(v: i64) -> TargetValue {
        TargetValue::Natural(v)
    }
}

impl TargetStructure for Lexicographic {
    type Value = (i64, i64);
    const KIND: TargetStructureKind = TargetStructureKind::Lexicographic;
    const TOP: (i64, i64) = (i64::MAX, i64::MAX);
    const BOTTOM: (i64, i64) = (i64::MIN, i64::MIN);

    fn describe(v: (i64, i64)) -> TargetValue {
        TargetValue::Lexicographic(v.0, v.1)
    }
}

pub type CostOf<C> = <<C as Criterion>::Gamma as CostStructure>::Cost;
pub type TargetOf<C> = <<C as Criterion>::Theta as TargetStructure>::Value;

/// A walk-optimality criterion: a cost structure, a target structure and the
/// target-cost function `TC` joining them.
pub trait Criterion: Send + Sync + 'static {
    type Gamma: CostStructure;
    type Theta: TargetStructure;
    const KIND: CriterionKind;

    /// `TC(e, c)` for a walk of cost `c` whose last edge is `e`.
    fn target_cost(e: &TemporalEdge, c: CostOf<Self>) -> TargetOf<Self>;
}

macro_rules! criterion {
    ($(#[$doc:meta])* $name:ident, $kind:ident, $gamma:ty, $theta:ty, |$e:ident, $c:pat_param| $tc:expr) => {
        $(#[$doc])*
        pub struct $name;

        impl Criterion for $name {
            type Gamma = $gamma;
            type Theta = $theta;
            const KIND: CriterionKind = CriterionKind::$kind;

            #[inline]
            fn target_cost($e: &TemporalEdge, $c: CostOf<Self>) -> TargetOf<Self> {
                $tc
            }
        }
    };
}

criterion!(
    /// Fewest edges.
    Shortest, Sh, ShortestCost, Natural, |_e, c| c
);
criterion!(
    /// Earliest arrival, then fewest edges.
    ShortestForemost, SFo, ShortestCost, Lexicographic, |e, c| (e.arr(), c)
);
criterion!(
    /// Smallest duration.
    Fastest, Fa, LatestCost, Natural, |e, c| e.arr() + c
);
criterion!(
    /// Earliest arrival.
    Foremost, Fo, AllCost, Natural, |e, _c| e.arr()
);
criterion!(
    /// Smallest duration, then fewest edges.
    ShortestFastest, SFa, ShortestLatestCost, Lexicographic, |e, c| (e.arr() + c.0, c.1)
);
criterion!(
    /// Latest departure.
    Latest, La, LatestCost, Natural, |_e, c| c
);
criterion!(
    /// Latest departure, then fewest edges.
    ShortestLatest, SLa, ShortestLatestCost, Lexicographic, |_e, c| c
);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CostStructureKind {
    All,
    Shortest,
    Latest,
    ShortestLatest,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TargetStructureKind {
    Natural,
    Lexicographic,
}

/// Runtime cost value, for reporting and for the dynamic API. Values of the
/// same variant order like the underlying structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CostValue {
    Unit,
    Hops(i64),
    NegDeparture(i64),
    NegDepartureHops(i64, i64),
}

/// Runtime target cost value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TargetValue {
    Natural(i64),
    Lexicographic(i64, i64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CriterionKind {
    Sh,
    SFo,
    Fa,
    Fo,
    SFa,
    La,
    SLa,
}

/// Code generic over the criterion, run through [`CriterionKind::dispatch`].
pub trait CriterionVisitor {
    type Output;
    fn visit<C: Criterion>(self) -> Self::Output;
}

impl CriterionKind {
    pub const ALL: [CriterionKind; 7] = [
        CriterionKind::Sh,
        CriterionKind::SFo,
        CriterionKind::Fa,
        CriterionKind::Fo,
        CriterionKind::SFa,
        CriterionKind::La,
        CriterionKind::SLa,
    ];

    /// The lowercase command-line token.
    pub fn token(self) -> &'static str {
        match self {
            CriterionKind::Sh => "sh",
            CriterionKind::SFo => "sfo",
            CriterionKind::Fa => "fa",
            CriterionKind::Fo => "fo",
            CriterionKind::SFa => "sfa",
            CriterionKind::La => "la",
            CriterionKind::SLa => "sla",
        }
    }

    pub fn dispatch<V: CriterionVisitor>(self, visitor: V) -> V::Output {
        match self {
            CriterionKind::Sh => visitor.visit::<Shortest>(),
            CriterionKind::SFo => visitor.visit::<ShortestForemost>(),
            CriterionKind::Fa => visitor.visit::<Fastest>(),
            CriterionKind::Fo => visitor.visit::<Foremost>(),
            CriterionKind::SFa => visitor.visit::<ShortestFastest>(),
            CriterionKind::La => visitor.visit::<Latest>(),
            CriterionKind::SLa => visitor.visit::<ShortestLatest>(),
        }
    }

    pub fn components(self) -> Components {
        struct Describe;
        impl CriterionVisitor for Describe {
            type Output = Components;
            fn visit<C: Criterion>(self) -> Components {
                Components {
                    criterion: C::KIND,
                    cost: C::Gamma::KIND,
                    target: C::Theta::KIND,
                }
            }
        }
        self.dispatch(Describe)
    }
}

impl fmt::Display for CriterionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for CriterionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CriterionKind::ALL
            .into_iter()
            .find(|k| k.token() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown criterion {s:?} (expected one of sh, sfo, fa, fo, sfa, la, sla)"
                ))
            })
    }
}

/// Which structures a criterion is wired to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Components {
    pub criterion: CriterionKind,
    pub cost: CostStructureKind,
    pub target: TargetStructureKind,
}

/// Looks up a criterion by its command-line token.
pub fn criterion_components(name: &str) -> Result<Components> {
    Ok(name.parse::<CriterionKind>()?.components())
}

/// `γ(W)` folded left along the walk, or `None` for an empty walk.
pub fn fold_walk_cost<S: CostStructure>(walk: &[TemporalEdge]) -> Option<S::Cost> {
    let (first, rest) = walk.split_first()?;
    Some(
        rest.iter()
            .fold(S::edge_cost(first), |c, e| S::extend(c, e)),
    )
}

/// Cost of a walk under the criterion's cost structure.
pub fn walk_cost(kind: CriterionKind, walk: &[TemporalEdge]) -> Result<CostValue> {
    struct Fold<'a>(&'a [TemporalEdge]);
    impl CriterionVisitor for Fold<'_> {
        type Output = Option<CostValue>;
        fn visit<C: Criterion>(self) -> Option<CostValue> {
            fold_walk_cost::<C::Gamma>(self.0).map(C::Gamma::describe)
        }
    }
    kind.dispatch(Fold(walk))
        .ok_or_else(|| Error::Input("cost of an empty walk is undefined".into()))
}

/// Target cost of a non-empty walk: `TC(last edge, γ(W))`.
pub fn walk_target_cost(kind: CriterionKind, walk: &[TemporalEdge]) -> Result<TargetValue> {
    struct Target<'a>(&'a [TemporalEdge]);
    impl CriterionVisitor for Target<'_> {
        type Output = Option<TargetValue>;
        fn visit<C: Criterion>(self) -> Option<TargetValue> {
            let c = fold_walk_cost::<C::Gamma>(self.0)?;
            let last = self.0.last()?;
            Some(C::Theta::describe(C::target_cost(last, c)))
        }
    }
    kind.dispatch(Target(walk))
        .ok_or_else(|| Error::Input("target cost of an empty walk is undefined".into()))
}

/// Walk duration helper used in reports.
pub fn duration(walk: &[TemporalEdge]) -> Option<Time> {
    Some(walk.last()?.arr() - walk.first()?.dep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge(tail: u32, head: u32, dep: Time, travel: Time) -> TemporalEdge {
        TemporalEdge::new(tail, head, dep, travel).unwrap()
    }

    #[test]
    fn shortest_components() {
        let e = edge(0, 1, 3, 2);
        assert_eq!(ShortestCost::edge_cost(&e), 1);
        assert_eq!(ShortestCost::combine(2, 3), 5);
        assert_eq!(Shortest::target_cost(&e, 4), 4);
    }

    #[test]
    fn fastest_target_is_duration() {
        let e = edge(0, 1, 3, 2);
        let c = LatestCost::edge_cost(&e);
        assert_eq!(c, -3);
        assert_eq!(Fastest::target_cost(&e, c), 2);
    }

    #[test]
    fn shortest_fastest_target() {
        let last = edge(4, 5, 7, 2);
        assert_eq!(ShortestFastest::target_cost(&last, (-3, 2)), (6, 2));
    }

    #[test]
    fn walk_costs() {
        let w = [edge(0, 1, 1, 1), edge(1, 2, 2, 1), edge(2, 3, 5, 1)];
        assert_eq!(walk_cost(CriterionKind::Sh, &w[..1]).unwrap(), CostValue::Hops(1));
        assert_eq!(walk_cost(CriterionKind::Sh, &w).unwrap(), CostValue::Hops(3));
        assert_eq!(
            walk_cost(CriterionKind::SFa, &w[..2]).unwrap(),
            CostValue::NegDepartureHops(-1, 2)
        );
        // duration 6 - 1 = 5 with 3 hops
        assert_eq!(
            walk_target_cost(CriterionKind::SFa, &w).unwrap(),
            TargetValue::Lexicographic(5, 3)
        );
        assert_eq!(duration(&w), Some(5));
        assert!(matches!(walk_cost(CriterionKind::Fo, &[]), Err(Error::Input(_))));
    }

    #[test]
    fn tokens_round_trip() {
        for k in CriterionKind::ALL {
            assert_eq!(k.token().parse::<CriterionKind>().unwrap(), k);
        }
        assert!(matches!("xx".parse::<CriterionKind>(), Err(Error::Config(_))));
        assert!(criterion_components("SFO").is_err());
    }

    #[test]
    fn component_table() {
        use CostStructureKind as G;
        use TargetStructureKind as T;
        let table = [
            ("sh", G::Shortest, T::Natural),
            ("sfo", G::Shortest, T::Lexicographic),
            ("fa", G::Latest, T::Natural),
            ("fo", G::All, T::Natural),
            ("sfa", G::ShortestLatest, T::Lexicographic),
            ("la", G::Latest, T::Natural),
            ("sla", G::ShortestLatest, T::Lexicographic),
        ];
        for (tok, g, t) in table {
            let c = criterion_components(tok).unwrap();
            assert_eq!((c.cost, c.target), (g, t), "{tok}");
        }
    }

    const _: () = assert!(Natural::BOTTOM < 0 && 0 < Natural::TOP);

    #[test]
    fn lexicographic_extremes_bracket_values() {
        assert!(Lexicographic::BOTTOM < (0, 0) && (0, 0) < Lexicographic::TOP);
    }
}
