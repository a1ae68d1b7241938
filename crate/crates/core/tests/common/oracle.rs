//! Brute-force recomputations used to cross-check the partitioners.
//!
//! Nothing here calls the scoring code under test: placements are looked up
//! by linear scan over the assignment list, windows are rebuilt from the
//! stream order, and LDG scores are compared as exact fractions.

use std::cmp::Ordering;

use wstream::baselines::{run_baseline_observed, Baseline, LdgConfig};
use wstream::graph::{make_stream, AdjacencyGraph, VertexId, VertexRecord};
use wstream::wstream::{run_observed, DecisionKind};
use wstream::{PartitionState, PartitionerConfig};

fn placements(state: &PartitionState) -> Vec<(VertexId, usize)> {
    let mut v: Vec<_> = state.assignments().collect();
    v.sort_unstable();
    v
}

fn count_into(placed: &[(VertexId, usize)], neighbors: &[VertexId], p: usize) -> u64 {
    neighbors
        .iter()
        .filter(|u| placed.iter().any(|&(v, q)| v == **u && q == p))
        .count() as u64
}

/// Candidate-edge plus buffered-edge totals for every partition.
pub fn window_totals(
    state: &PartitionState,
    candidate: &VertexRecord,
    buffered: &[VertexRecord],
) -> Vec<(u64, u64)> {
    let placed = placements(state);
    (0..state.k())
        .map(|p| {
            let c = count_into(&placed, &candidate.neighbors, p);
            let b = buffered
                .iter()
                .map(|r| count_into(&placed, &r.neighbors, p))
                .sum();
            (c, b)
        })
        .collect()
}

pub fn expected_eligible(loads: &[u64], slack: u64) -> Vec<usize> {
    let max = *loads.iter().max().unwrap();
    let min = *loads.iter().min().unwrap();
    let threshold = slack.max(1);
    (0..loads.len())
        .filter(|&p| max - min < threshold || loads[p] != max)
        .collect()
}

#[derive(Debug, Default, Clone, Copy)]
pub struct CheckCounts {
    pub steps: usize,
    pub greedy_steps: usize,
    pub max_gap: u64,
}

/// Runs WStream without co-assignment and checks every decision against
/// the brute-force window, gate and score. `sample` selects which steps
/// get the full score check; balance and eligibility are always checked.
pub fn check_wstream_run(
    graph: &AdjacencyGraph,
    config: &PartitionerConfig,
    mut sample: impl FnMut(usize) -> bool,
) -> Result<CheckCounts, String> {
    assert!(!config.co_assign);
    let order: Vec<VertexRecord> = make_stream(graph, config.order).collect();
    let mut counts = CheckCounts::default();
    let mut failure: Option<String> = None;

    let (state, _) = run_observed(graph, config, |d| {
        if failure.is_some() {
            return;
        }
        let i = counts.steps;
        counts.steps += 1;
        let loads = d.state.loads();
        counts.max_gap = counts.max_gap.max(d.state.load_gap());

        let mut fail = |msg: String| failure = Some(format!("step {i}: {msg}"));
        if d.vertex.id != order[i].id {
            return fail(format!(
                "candidate {} but stream has {}",
                d.vertex.id, order[i].id
            ));
        }
        let window_end = (i + config.window).min(order.len());
        let buffered: Vec<VertexRecord> = order[i + 1..window_end]
            .iter()
            .filter(|r| order[i].neighbors.contains(&r.id))
            .cloned()
            .collect();
        let got: Vec<VertexId> = d.buffered.iter().map(|r| r.id).collect();
        let want: Vec<VertexId> = buffered.iter().map(|r| r.id).collect();
        if got != want {
            return fail(format!("buffered {got:?}, brute force {want:?}"));
        }

        if i == 0 {
            if d.kind != DecisionKind::Seed || d.chosen >= config.k {
                fail(format!("first step kind {:?} chose {}", d.kind, d.chosen));
            }
            return;
        }
        counts.greedy_steps += 1;
        let eligible = expected_eligible(loads, config.slack);
        if d.eligible != eligible.as_slice() {
            return fail(format!(
                "eligible {:?}, expected {eligible:?} for loads {loads:?}",
                d.eligible
            ));
        }

        // The implementation's own score must match the brute force, and
        // the choice must follow argmax, then min load.
        let totals = window_totals(d.state, &order[i], &buffered);
        if sample(i) {
            let score = d.score.expect("greedy step has a score");
            for (p, &total) in totals.iter().enumerate() {
                let want = eligible.contains(&p).then_some(total);
                let have = score.get(p).map(|s| (s.candidate_edges, s.buffered_edges));
                if want != have {
                    return fail(format!(
                        "partition {p}: score {have:?}, brute force {want:?}"
                    ));
                }
            }
        }
        let best = eligible
            .iter()
            .map(|&p| totals[p].0 + totals[p].1)
            .max()
            .unwrap();
        let tied: Vec<usize> = eligible
            .iter()
            .copied()
            .filter(|&p| totals[p].0 + totals[p].1 == best)
            .collect();
        let min_load = tied.iter().map(|&p| loads[p]).min().unwrap();
        if !tied.contains(&d.chosen) || loads[d.chosen] != min_load {
            fail(format!(
                "chose {} (load {}), tied set {tied:?} with min load {min_load}",
                d.chosen, loads[d.chosen]
            ));
        }
    })
    .map_err(|e| e.to_string())?;

    if let Some(f) = failure {
        return Err(f);
    }
    counts.max_gap = counts.max_gap.max(state.load_gap());
    if state.assigned() != graph.n() || state.loads().iter().sum::<u64>() as usize != graph.n() {
        return Err(format!(
            "assigned {} of {} vertices",
            state.assigned(),
            graph.n()
        ));
    }
    Ok(counts)
}

/// `a/b` vs `c/d` for non-negative integers with positive denominators.
fn cmp_fraction(a: u64, b: u64, c: u64, d: u64) -> Ordering {
    (a as u128 * d as u128).cmp(&(c as u128 * b as u128))
}

/// Runs LDG and checks each choice is a maximizer of
/// `shared * (1 - load / C)` over partitions below capacity, with the
/// least-loaded tie rule, and that no partition ever exceeds `C`.
pub fn check_ldg_run(
    graph: &AdjacencyGraph,
    config: &LdgConfig,
    mut sample: impl FnMut(usize) -> bool,
) -> Result<usize, String> {
    assert_eq!(config.epsilon, 0.0, "oracle capacity assumes eps = 0");
    let capacity = (graph.n() as u64).div_ceil(config.k as u64);
    let mut step = 0;
    let mut checked = 0;
    let mut failure: Option<String> = None;

    let (state, _) =
        run_baseline_observed(graph, &Baseline::Ldg(config.clone()), |st, v, chosen| {
            if failure.is_some() {
                return;
            }
            let i = step;
            step += 1;
            let loads = st.loads();
            if loads.iter().any(|&l| l > capacity) {
                failure = Some(format!("step {i}: loads {loads:?} exceed C={capacity}"));
                return;
            }
            if !sample(i) {
                return;
            }
            checked += 1;
            let placed = placements(st);
            // score_p = shared_p * (C - load_p) / C
            let scores: Vec<Option<(u64, u64)>> = (0..st.k())
                .map(|p| {
                    (loads[p] < capacity).then(|| {
                        (
                            count_into(&placed, &v.neighbors, p) * (capacity - loads[p]),
                            capacity,
                        )
                    })
                })
                .collect();
            let Some(Some(mine)) = scores.get(chosen).copied() else {
                failure = Some(format!(
                    "step {i}: chose full or invalid partition {chosen}"
                ));
                return;
            };
            for (p, s) in scores.iter().enumerate() {
                let Some(s) = *s else { continue };
                match cmp_fraction(s.0, s.1, mine.0, mine.1) {
                    Ordering::Greater => {
                        failure = Some(format!(
                            "step {i}: partition {p} scores {s:?} > chosen {chosen} {mine:?}"
                        ));
                        return;
                    }
                    Ordering::Equal if loads[p] < loads[chosen] => {
                        failure = Some(format!("step {i}: tie with lighter partition {p}"));
                        return;
                    }
                    _ => {}
                }
            }
        })
        .map_err(|e| e.to_string())?;

    if let Some(f) = failure {
        return Err(f);
    }
    if state.loads().iter().any(|&l| l > capacity) || state.assigned() != graph.n() {
        return Err(format!("final loads {:?}, C={capacity}", state.loads()));
    }
    Ok(checked)
}
