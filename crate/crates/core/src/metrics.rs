//! Partition quality: edge-cut ratio and load imbalance.

use std::time::{Duration, Instant};

use crate::baselines::{run_baseline, Baseline};
use crate::error::{Error, Result};
use crate::graph::AdjacencyGraph;
use crate::partition_state::PartitionState;
use crate::wstream::{self, PartitionerConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeCut {
    pub cut_edges: usize,
    pub ratio: f64,
}

/// Counts each undirected edge once; an edge is cut when its endpoints sit
/// in different partitions. The ratio is 0 for an edgeless graph.
pub fn edge_cut_ratio(graph: &AdjacencyGraph, state: &PartitionState) -> Result<EdgeCut> {
    if let Some(&v) = graph
        .vertices()
        .iter()
        .find(|&&v| state.partition_of(v).is_none())
    {
        return Err(Error::IncompleteAssignment(v));
    }
    let part = |v| state.partition_of(v).expect("checked above");
    let cut_edges = graph.edges().filter(|&(u, v)| part(u) != part(v)).count();
    let ratio = if graph.m() == 0 {
        0.0
    } else {
        cut_edges as f64 / graph.m() as f64
    };
    Ok(EdgeCut { cut_edges, ratio })
}

/// Population standard deviation of the per-partition loads.
pub fn load_imbalance(loads: &[u64]) -> Result<f64> {
    if loads.is_empty() {
        return Err(Error::EmptyLoads);
    }
    let k = loads.len() as f64;
    let mean = loads.iter().map(|&l| l as f64).sum::<f64>() / k;
    let var = loads
        .iter()
        .map(|&l| (l as f64 - mean).powi(2))
        .sum::<f64>()
        / k;
    Ok(var.sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct QualityReport {
    pub edge_cut_ratio: f64,
    pub cut_edges: usize,
    pub load_imbalance: f64,
    pub loads: Vec<u64>,
    pub elapsed: Duration,
}

impl QualityReport {
    pub fn from_state(
        graph: &AdjacencyGraph,
        state: &PartitionState,
        elapsed: Duration,
    ) -> Result<Self> {
        let cut = edge_cut_ratio(graph, state)?;
        Ok(QualityReport {
            edge_cut_ratio: cut.ratio,
            cut_edges: cut.cut_edges,
            load_imbalance: load_imbalance(state.loads())?,
            loads: state.loads().to_vec(),
            elapsed,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Algorithm {
    WStream(PartitionerConfig),
    Baseline(Baseline),
}

/// Partitions with any algorithm. The elapsed time covers stream creation
/// through the final assignment.
pub fn partition(graph: &AdjacencyGraph, algo: &Algorithm) -> Result<(PartitionState, Duration)> {
    let started = Instant::now();
    let (state, _) = match algo {
        Algorithm::WStream(cfg) => wstream::run(graph, cfg)?,
        Algorithm::Baseline(b) => run_baseline(graph, b)?,
    };
    Ok((state, started.elapsed()))
}

pub fn measure_run(graph: &AdjacencyGraph, algo: &Algorithm) -> Result<QualityReport> {
    let (state, elapsed) = partition(graph, algo)?;
    QualityReport::from_state(graph, &state, elapsed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_adjacency, parse_edge_list, StreamOrder};

    fn graph(text: &str) -> AdjacencyGraph {
        build_adjacency(&parse_edge_list(text).unwrap())
    }

    fn assign(k: usize, parts: &[(u64, usize)]) -> PartitionState {
        let mut st = PartitionState::new(k, 0).unwrap();
        for &(v, p) in parts {
            st.assign(v, p).unwrap();
        }
        st
    }

    #[test]
    fn path_split_in_half_cuts_one_of_three() {
        let g = graph("1 2\n2 3\n3 4\n");
        let st = assign(2, &[(1, 0), (2, 0), (3, 1), (4, 1)]);
        let cut = edge_cut_ratio(&g, &st).unwrap();
        assert_eq!(cut.cut_edges, 1);
        assert_eq!(cut.ratio, 1.0 / 3.0);
    }

    #[test]
    fn single_partition_has_no_cut() {
        let g = graph("1 2\n2 3\n3 1\n3 4\n");
        let st = assign(1, &[(1, 0), (2, 0), (3, 0), (4, 0)]);
        assert_eq!(edge_cut_ratio(&g, &st).unwrap().ratio, 0.0);
    }

    #[test]
    fn triangle_in_singletons_is_fully_cut() {
        let g = graph("1 2\n2 3\n3 1\n");
        let st = assign(3, &[(1, 0), (2, 1), (3, 2)]);
        let cut = edge_cut_ratio(&g, &st).unwrap();
        assert_eq!((cut.cut_edges, cut.ratio), (3, 1.0));
    }

    #[test]
    fn unassigned_vertex_is_named() {
        let g = graph("1 2\n2 3\n");
        let st = assign(2, &[(1, 0), (2, 1)]);
        assert!(matches!(
            edge_cut_ratio(&g, &st),
            Err(Error::IncompleteAssignment(3))
        ));
    }

    #[test]
    fn empty_graph_ratio_is_zero() {
        let g = graph("");
        let st = PartitionState::new(2, 0).unwrap();
        assert_eq!(edge_cut_ratio(&g, &st).unwrap().ratio, 0.0);
    }

    #[test]
    fn imbalance_values() {
        assert_eq!(load_imbalance(&[10, 10]).unwrap(), 0.0);
        assert_eq!(load_imbalance(&[1, 3]).unwrap(), 1.0);
        assert_eq!(load_imbalance(&[0, 4]).unwrap(), 2.0);
        assert!(matches!(load_imbalance(&[]), Err(Error::EmptyLoads)));
    }

    #[test]
    fn k1_report_is_zero() {
        let g = graph("1 2\n2 3\n3 4\n4 1\n");
        let algo = Algorithm::WStream(PartitionerConfig {
            k: 1,
            window: 2,
            slack: 0,
            order: StreamOrder::UniformRandom(3),
            ..Default::default()
        });
        let report = measure_run(&g, &algo).unwrap();
        assert_eq!(report.edge_cut_ratio, 0.0);
        assert_eq!(report.load_imbalance, 0.0);
        assert_eq!(report.loads, vec![4]);
    }
}
