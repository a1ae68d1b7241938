//! The WStream partitioner.
//!
//! Each step looks at the candidate at the front of the stream window and
//! scores every eligible partition by the candidate's edges into it plus
//! the edges its buffered neighbors have into it. When the load gap
//! reaches the slack, all maximum-load partitions become ineligible until
//! the gap closes again.

use std::time::{Duration, Instant};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{make_stream, AdjacencyGraph, StreamOrder, VertexId, VertexRecord};
use crate::partition_state::{PartitionIndex, PartitionState};
use crate::rng::{partitioner_rng, RngState};
use crate::window::StreamWindow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionerConfig {
    pub k: usize,
    pub window: usize,
    pub slack: u64,
    pub seed: u64,
    pub co_assign: bool,
    pub order: StreamOrder,
}

impl Default for PartitionerConfig {
    fn default() -> Self {
        PartitionerConfig {
            k: 2,
            window: 100,
            slack: 100,
            seed: 0,
            co_assign: false,
            order: StreamOrder::UniformRandom(0),
        }
    }
}

impl PartitionerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::Config("partition count k must be at least 1".into()));
        }
        if self.window == 0 {
            return Err(Error::Config("window size must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PartitionScore {
    pub candidate_edges: u64,
    pub buffered_edges: u64,
}

impl PartitionScore {
    pub fn total(&self) -> u64 {
        self.candidate_edges + self.buffered_edges
    }
}

/// Per-partition scores; `None` marks partitions excluded by the gate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyScore {
    pub per_partition: Vec<Option<PartitionScore>>,
}

impl GreedyScore {
    pub fn get(&self, p: PartitionIndex) -> Option<PartitionScore> {
        self.per_partition.get(p).copied().flatten()
    }

    pub fn totals(&self) -> impl Iterator<Item = (PartitionIndex, u64)> + '_ {
        self.per_partition
            .iter()
            .enumerate()
            .filter_map(|(p, s)| s.map(|s| (p, s.total())))
    }

    pub fn max_total(&self) -> Option<u64> {
        self.totals().map(|(_, t)| t).max()
    }
}

pub fn greedy_score(
    state: &PartitionState,
    candidate: &VertexRecord,
    buffered: &[&VertexRecord],
    eligible: &[PartitionIndex],
) -> Result<GreedyScore> {
    if eligible.is_empty() {
        return Err(Error::Config("no eligible partition to score".into()));
    }
    let k = state.k();
    let mut cand = vec![0u64; k];
    state.accumulate_edges(&candidate.neighbors, &mut cand);
    let mut buf = vec![0u64; k];
    for b in buffered {
        state.accumulate_edges(&b.neighbors, &mut buf);
    }
    let mut per_partition = vec![None; k];
    for &p in eligible {
        if p >= k {
            return Err(Error::PartitionIndex { index: p, k });
        }
        per_partition[p] = Some(PartitionScore {
            candidate_edges: cand[p],
            buffered_edges: buf[p],
        });
    }
    Ok(GreedyScore { per_partition })
}

pub fn greedy_choose(
    state: &PartitionState,
    candidate: &VertexRecord,
    buffered: &[&VertexRecord],
    eligible: &[PartitionIndex],
    rng: &mut RngState,
) -> Result<PartitionIndex> {
    let score = greedy_score(state, candidate, buffered, eligible)?;
    Ok(choose_from_score(state, &score, rng))
}

/// Argmax of the totals. A zero maximum means no edges were found, so every
/// eligible partition is tied; ties go to the least loaded, then to a
/// uniform draw.
pub fn choose_from_score(
    state: &PartitionState,
    score: &GreedyScore,
    rng: &mut RngState,
) -> PartitionIndex {
    let best = score.max_total().expect("score has an eligible partition");
    let tied: Vec<_> = score
        .totals()
        .filter(|&(_, t)| t == best)
        .map(|(p, _)| p)
        .collect();
    least_loaded(state, &tied, rng)
}

/// Minimum-load member of `among`; residual ties drawn uniformly.
pub(crate) fn least_loaded(
    state: &PartitionState,
    among: &[PartitionIndex],
    rng: &mut RngState,
) -> PartitionIndex {
    let loads = state.loads();
    let min = among
        .iter()
        .map(|&p| loads[p])
        .min()
        .expect("non-empty tie set");
    let lightest: Vec<_> = among.iter().copied().filter(|&p| loads[p] == min).collect();
    match lightest.len() {
        1 => lightest[0],
        n => lightest[rng.gen_range(0..n)],
    }
}

/// Partitions the balance gate currently admits.
pub fn eligible_partitions(state: &PartitionState) -> Vec<PartitionIndex> {
    if state.imbalance_exceeded() {
        let max = state.max_load();
        (0..state.k())
            .filter(|&p| state.loads()[p] != max)
            .collect()
    } else {
        (0..state.k()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecisionKind {
    /// First vertex of the run, placed uniformly at random.
    Seed,
    Greedy,
    /// Buffered neighbor following the candidate into its partition.
    CoAssign,
}

/// One assignment decision, reported before the state is mutated.
#[derive(Debug)]
pub struct Decision<'a> {
    pub kind: DecisionKind,
    pub state: &'a PartitionState,
    pub vertex: &'a VertexRecord,
    pub buffered: &'a [&'a VertexRecord],
    pub eligible: &'a [PartitionIndex],
    pub score: Option<&'a GreedyScore>,
    pub chosen: PartitionIndex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepOutcome {
    pub candidate: VertexId,
    pub partition: PartitionIndex,
    pub co_assigned: Vec<(VertexId, PartitionIndex)>,
}

/// Assigns the current candidate (and, in co-assignment mode, its buffered
/// neighbors), pops it, and refills the window.
pub fn step<I, F>(
    state: &mut PartitionState,
    window: &mut StreamWindow,
    stream: &mut I,
    rng: &mut RngState,
    config: &PartitionerConfig,
    observer: &mut F,
) -> Result<StepOutcome>
where
    I: Iterator<Item = VertexRecord>,
    F: FnMut(&Decision<'_>),
{
    let candidate = window.candidate()?;
    let buffered = window.buffered_neighbors(candidate);
    let follower_ids: Vec<VertexId> = if config.co_assign {
        buffered.iter().map(|b| b.id).collect()
    } else {
        Vec::new()
    };

    let partition = if state.is_empty() {
        let eligible: Vec<_> = (0..state.k()).collect();
        let chosen = rng.gen_range(0..state.k());
        observer(&Decision {
            kind: DecisionKind::Seed,
            state,
            vertex: candidate,
            buffered: &buffered,
            eligible: &eligible,
            score: None,
            chosen,
        });
        chosen
    } else {
        let eligible = eligible_partitions(state);
        let score = greedy_score(state, candidate, &buffered, &eligible)?;
        let chosen = choose_from_score(state, &score, rng);
        observer(&Decision {
            kind: DecisionKind::Greedy,
            state,
            vertex: candidate,
            buffered: &buffered,
            eligible: &eligible,
            score: Some(&score),
            chosen,
        });
        chosen
    };
    let candidate_id = candidate.id;
    state.assign(candidate_id, partition)?;

    let mut co_assigned = Vec::with_capacity(follower_ids.len());
    for id in follower_ids {
        let eligible = eligible_partitions(state);
        let follower = window.remove_by_id(id)?;
        let others: Vec<&VertexRecord> = window
            .neighbors_in_window(&follower)
            .into_iter()
            .filter(|r| state.partition_of(r.id).is_none())
            .collect();
        let (chosen, kind, score) = if eligible.contains(&partition) {
            (partition, DecisionKind::CoAssign, None)
        } else {
            let score = greedy_score(state, &follower, &others, &eligible)?;
            (
                choose_from_score(state, &score, rng),
                DecisionKind::Greedy,
                Some(score),
            )
        };
        observer(&Decision {
            kind,
            state,
            vertex: &follower,
            buffered: &others,
            eligible: &eligible,
            score: score.as_ref(),
            chosen,
        });
        state.assign(id, chosen)?;
        co_assigned.push((id, chosen));
    }

    window.pop_candidate()?;
    window.fill(stream);
    Ok(StepOutcome {
        candidate: candidate_id,
        partition,
        co_assigned,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunStats {
    pub elapsed: Duration,
    pub steps: usize,
    pub co_assigned: usize,
}

pub fn run(
    graph: &AdjacencyGraph,
    config: &PartitionerConfig,
) -> Result<(PartitionState, RunStats)> {
    run_observed(graph, config, |_| {})
}

/// `run` with a hook invoked at every assignment decision.
pub fn run_observed<F>(
    graph: &AdjacencyGraph,
    config: &PartitionerConfig,
    mut observer: F,
) -> Result<(PartitionState, RunStats)>
where
    F: FnMut(&Decision<'_>),
{
    config.validate()?;
    let started = Instant::now();
    let mut stream = make_stream(graph, config.order);
    let mut state = PartitionState::new(config.k, config.slack)?;
    let mut window = StreamWindow::new(config.window)?;
    let mut rng = partitioner_rng(config.seed);
    let mut stats = RunStats::default();

    window.fill(&mut stream);
    while !window.is_empty() {
        let outcome = step(
            &mut state,
            &mut window,
            &mut stream,
            &mut rng,
            config,
            &mut observer,
        )?;
        stats.steps += 1;
        stats.co_assigned += outcome.co_assigned.len();
    }
    stats.elapsed = started.elapsed();
    Ok((state, stats))
}
