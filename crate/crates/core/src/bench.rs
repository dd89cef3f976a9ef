//! Per-source timing.

use std::time::{Duration, Instant};

use crate::cost::{Criterion, CriterionKind, CriterionVisitor};
use crate::engine::{EdgeBetweennessState, EngineKind};
use crate::error::{Error, Result};
use crate::graph::{Beta, NodeId, SortedRepresentation};
use crate::numeric::{Exact, Fast, Mode, Numeric};

#[derive(Clone, Debug)]
pub struct BenchReport {
    pub sources: usize,
    /// Wall time of each repetition over all sources.
    pub samples: Vec<Duration>,
    pub median: Duration,
    /// `median / sources`
    pub per_source: Duration,
}

/// Times `reps` repetitions of the three phases for each of `sources`,
/// reusing one engine state.
pub fn bench_sources(
    rep: &SortedRepresentation,
    criterion: CriterionKind,
    beta: Beta,
    mode: Mode,
    engine: EngineKind,
    sources: &[NodeId],
    reps: usize,
) -> Result<BenchReport> {
    if reps == 0 {
        return Err(Error::Config("repetitions must be positive".into()));
    }
    if sources.is_empty() {
        return Err(Error::Config("no sources to time".into()));
    }
    struct Timed<'a> {
        rep: &'a SortedRepresentation,
        beta: Beta,
        mode: Mode,
        engine: EngineKind,
        sources: &'a [NodeId],
        reps: usize,
    }
    impl CriterionVisitor for Timed<'_> {
        type Output = Result<Vec<Duration>>;
        fn visit<C: Criterion>(self) -> Self::Output {
            match self.mode {
                Mode::Exact => time::<C, Exact>(self.rep, self.beta, self.engine, self.sources, self.reps),
                Mode::Fast => time::<C, Fast>(self.rep, self.beta, self.engine, self.sources, self.reps),
            }
        }
    }
    let samples = criterion.dispatch(Timed {
        rep,
        beta,
        mode,
        engine,
        sources,
        reps,
    })?;
    let median = median(&samples);
    Ok(BenchReport {
        sources: sources.len(),
        per_source: median / sources.len() as u32,
        median,
        samples,
    })
}

fn time<C: Criterion, N: Numeric>(
    rep: &SortedRepresentation,
    beta: Beta,
    engine: EngineKind,
    sources: &[NodeId],
    reps: usize,
) -> Result<Vec<Duration>> {
    let mut state = EdgeBetweennessState::<C, N>::new(rep);
    let mut out = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        for &s in sources {
            state.run(s, beta, engine)?;
        }
        out.push(start.elapsed());
    }
    Ok(out)
}

pub fn median(samples: &[Duration]) -> Duration {
    let mut s = samples.to_vec();
    s.sort_unstable();
    let k = s.len();
    if k % 2 == 1 {
        s[k / 2]
    } else {
        (s[k / 2 - 1] + s[k / 2]) / 2
    }
}
