//! One-pass comparison partitioners: Linear Deterministic Greedy and
//! uniform hashing.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::{make_stream, AdjacencyGraph, StreamOrder, VertexId, VertexRecord};
use crate::partition_state::{CapacityBound, PartitionIndex, PartitionState};
use crate::rng::{partitioner_rng, RngState};
use crate::wstream::{least_loaded, RunStats};

#[derive(Debug, Clone, PartialEq)]
pub struct LdgConfig {
    pub k: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub order: StreamOrder,
}

impl Default for LdgConfig {
    fn default() -> Self {
        LdgConfig {
            k: 2,
            epsilon: 0.0,
            seed: 0,
            order: StreamOrder::UniformRandom(0),
        }
    }
}

/// LDG scores scaled by the capacity: `|N(v) ∩ P_i| * (C - load_i)`.
///
/// Dividing by `C` is a common positive factor, so comparing these integers
/// orders partitions exactly as `|N(v) ∩ P_i| * (1 - load_i / C)` does.
/// Full partitions are `None`.
pub fn ldg_scores(
    state: &PartitionState,
    v: &VertexRecord,
    capacity: CapacityBound,
) -> Vec<Option<u64>> {
    let c = capacity.l_max();
    let mut shared = vec![0u64; state.k()];
    state.accumulate_edges(&v.neighbors, &mut shared);
    shared
        .iter()
        .zip(state.loads())
        .map(|(&s, &load)| (load < c).then(|| s * (c - load)))
        .collect()
}

pub fn ldg_choose(
    state: &PartitionState,
    v: &VertexRecord,
    capacity: CapacityBound,
    rng: &mut RngState,
) -> Result<PartitionIndex> {
    let scores = ldg_scores(state, v, capacity);
    let best = scores
        .iter()
        .flatten()
        .copied()
        .max()
        .ok_or(Error::CapacityExhausted {
            capacity: capacity.l_max(),
        })?;
    let tied: Vec<_> = scores
        .iter()
        .enumerate()
        .filter(|(_, s)| **s == Some(best))
        .map(|(p, _)| p)
        .collect();
    Ok(least_loaded(state, &tied, rng))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HashMix {
    Identity,
    #[default]
    SplitMix64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn hash_choose(v: VertexId, k: usize, mix: HashMix) -> PartitionIndex {
    let h = match mix {
        HashMix::Identity => v,
        HashMix::SplitMix64 => splitmix64(v),
    };
    (h % k as u64) as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashConfig {
    pub k: usize,
    pub mix: HashMix,
    pub order: StreamOrder,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Baseline {
    Ldg(LdgConfig),
    Hashing(HashConfig),
}

pub fn run_baseline(
    graph: &AdjacencyGraph,
    baseline: &Baseline,
) -> Result<(PartitionState, RunStats)> {
    run_baseline_observed(graph, baseline, |_, _, _| {})
}

/// `run_baseline` with a hook seeing the pre-assignment state, the record,
/// and the chosen partition at every step.
pub fn run_baseline_observed<F>(
    graph: &AdjacencyGraph,
    baseline: &Baseline,
    mut observer: F,
) -> Result<(PartitionState, RunStats)>
where
    F: FnMut(&PartitionState, &VertexRecord, PartitionIndex),
{
    let started = Instant::now();
    let (k, order) = match baseline {
        Baseline::Ldg(c) => (c.k, c.order),
        Baseline::Hashing(c) => (c.k, c.order),
    };
    let mut state = PartitionState::new(k, 0)?;
    let mut steps = 0;
    match baseline {
        Baseline::Ldg(cfg) => {
            let capacity = CapacityBound::new(graph.n(), cfg.k, cfg.epsilon)?;
            let mut rng = partitioner_rng(cfg.seed);
            for v in make_stream(graph, order) {
                let p = ldg_choose(&state, &v, capacity, &mut rng)?;
                observer(&state, &v, p);
                state.assign(v.id, p)?;
                steps += 1;
            }
        }
        Baseline::Hashing(cfg) => {
            for v in make_stream(graph, order) {
                let p = hash_choose(v.id, cfg.k, cfg.mix);
                observer(&state, &v, p);
                state.assign(v.id, p)?;
                steps += 1;
            }
        }
    }
    Ok((
        state,
        RunStats {
            elapsed: started.elapsed(),
            steps,
            co_assigned: 0,
        },
    ))
}
