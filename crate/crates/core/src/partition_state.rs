//! Vertex-to-partition metadata and balance bookkeeping.
//!
//! Two distinct balance notions live here. `slack` is the absolute
//! vertex-count gap tolerated between the fullest and emptiest partitions,
//! consumed by the WStream balance gate. [`CapacityBound`] is the
//! fractional `(1 + eps) * ceil(n / k)` ceiling used by LDG.

use std::collections::HashMap;
use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::graph::VertexId;

pub type PartitionIndex = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionState {
    k: usize,
    slack: u64,
    assignment: HashMap<VertexId, u32>,
    loads: Vec<u64>,
}

impl PartitionState {
    pub fn new(k: usize, slack: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("partition count k must be at least 1".into()));
        }
        if k > u32::MAX as usize {
            return Err(Error::Config(format!("partition count {k} is too large")));
        }
        Ok(PartitionState {
            k,
            slack,
            assignment: HashMap::new(),
            loads: vec![0; k],
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn slack(&self) -> u64 {
        self.slack
    }

    pub fn loads(&self) -> &[u64] {
        &self.loads
    }

    pub fn assigned(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn partition_of(&self, v: VertexId) -> Option<PartitionIndex> {
        self.assignment.get(&v).map(|&p| p as usize)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (VertexId, PartitionIndex)> + '_ {
        self.assignment.iter().map(|(&v, &p)| (v, p as usize))
    }

    pub fn assign(&mut self, v: VertexId, p: PartitionIndex) -> Result<()> {
        if p >= self.k {
            return Err(Error::PartitionIndex {
                index: p,
                k: self.k,
            });
        }
        if self.assignment.contains_key(&v) {
            return Err(Error::AlreadyAssigned(v));
        }
        self.assignment.insert(v, p as u32);
        self.loads[p] += 1;
        Ok(())
    }

    /// Number of `neighbors` already placed in partition `p`.
    pub fn edges_into(&self, neighbors: &[VertexId], p: PartitionIndex) -> usize {
        neighbors
            .iter()
            .filter(|u| self.partition_of(**u) == Some(p))
            .count()
    }

    /// `edges_into` for every partition in one pass over `neighbors`,
    /// added onto `counts`.
    pub fn accumulate_edges(&self, neighbors: &[VertexId], counts: &mut [u64]) {
        debug_assert_eq!(counts.len(), self.k);
        for u in neighbors {
            if let Some(&p) = self.assignment.get(u) {
                counts[p as usize] += 1;
            }
        }
    }

    pub fn max_load(&self) -> u64 {
        self.loads.iter().copied().max().unwrap_or(0)
    }

    pub fn min_load(&self) -> u64 {
        self.loads.iter().copied().min().unwrap_or(0)
    }

    pub fn load_gap(&self) -> u64 {
        self.max_load() - self.min_load()
    }

    /// Every partition attaining the maximum load.
    pub fn max_load_partitions(&self) -> Vec<PartitionIndex> {
        let max = self.max_load();
        (0..self.k).filter(|&p| self.loads[p] == max).collect()
    }

    /// Whether the balance gate is closed: the load gap has reached the
    /// slack. Slack 0 is strict balance and closes the gate at a gap of 1.
    pub fn imbalance_exceeded(&self) -> bool {
        self.load_gap() >= self.slack.max(1)
    }

    pub fn write_metadata<W: Write>(&self, mut sink: W) -> Result<()> {
        writeln!(sink, "wstream-meta v1 k={} slack={}", self.k, self.slack)?;
        let mut rows: Vec<_> = self.assignment.iter().collect();
        rows.sort_unstable();
        for (v, p) in rows {
            writeln!(sink, "{v}\t{p}")?;
        }
        sink.flush()?;
        Ok(())
    }

    pub fn metadata_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_metadata(&mut out)
            .expect("writing to a Vec cannot fail");
        out
    }

    pub fn read_metadata<R: Read>(mut source: R) -> Result<Self> {
        let mut text = String::new();
        source.read_to_string(&mut text).map_err(|e| {
            if e.kind() == std::io::ErrorKind::InvalidData {
                Error::Format {
                    offset: 0,
                    line: 0,
                    message: "metadata is not valid UTF-8".into(),
                }
            } else {
                Error::Io(e)
            }
        })?;
        Self::parse_metadata(&text)
    }

    pub fn parse_metadata(text: &str) -> Result<Self> {
        let mut offset = 0;
        let mut lines = text.split_inclusive('\n').enumerate().map(|(i, raw)| {
            let start = offset;
            offset += raw.len();
            (i + 1, start, raw.strip_suffix('\n').unwrap_or(raw))
        });
        let fail = |offset: usize, line: usize, message: String| Error::Format {
            offset,
            line,
            message,
        };

        let (_, _, header) = lines
            .next()
            .ok_or_else(|| fail(0, 1, "missing header".into()))?;
        let (k, slack) = parse_header(header).ok_or_else(|| {
            fail(
                0,
                1,
                format!("expected `wstream-meta v1 k=<k> slack=<slack>`, got {header:?}"),
            )
        })?;
        let mut state = PartitionState::new(k, slack).map_err(|e| fail(0, 1, e.to_string()))?;

        for (line, start, body) in lines {
            let (v, p) = body
                .split_once('\t')
                .and_then(|(v, p)| Some((v.parse::<VertexId>().ok()?, p.parse::<usize>().ok()?)))
                .ok_or_else(|| {
                    fail(
                        start,
                        line,
                        format!("expected `vertex<TAB>partition`, got {body:?}"),
                    )
                })?;
            if p >= k {
                return Err(fail(
                    start,
                    line,
                    format!("partition {p} out of range for header k={k}"),
                ));
            }
            if state.assignment.contains_key(&v) {
                return Err(fail(start, line, format!("vertex {v} assigned twice")));
            }
            state.assign(v, p)?;
        }
        Ok(state)
    }
}

fn parse_header(line: &str) -> Option<(usize, u64)> {
    let rest = line.strip_prefix("wstream-meta v1 ")?;
    let (k, slack) = rest.split_once(' ')?;
    let k = k.strip_prefix("k=")?.parse().ok()?;
    let slack = slack.strip_prefix("slack=")?.parse().ok()?;
    Some((k, slack))
}

/// LDG capacity `ceil((1 + eps) * ceil(n / k))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CapacityBound {
    l_max: u64,
}

impl CapacityBound {
    pub fn new(n: usize, k: usize, epsilon: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Config("partition count k must be at least 1".into()));
        }
        if !epsilon.is_finite() || epsilon < 0.0 {
            return Err(Error::Config(format!(
                "capacity slack must be finite and >= 0, got {epsilon}"
            )));
        }
        let even = n.div_ceil(k) as u64;
        let l_max = ((1.0 + epsilon) * even as f64).ceil() as u64;
        Ok(CapacityBound {
            l_max: l_max.max(even).max(1),
        })
    }

    pub fn l_max(&self) -> u64 {
        self.l_max
    }
}
