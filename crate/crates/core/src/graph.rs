//! Edge-list ingestion and the one-pass vertex stream.
//!
//! Input files follow the SNAP convention: one `u v` pair per line, `#`
//! comment lines, optional gzip compression. Directed sources are
//! symmetrized, self-loops dropped, and parallel edges merged, so every
//! downstream consumer sees a simple undirected graph. Vertex ids are kept
//! exactly as read.

use std::collections::{HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use rand::seq::SliceRandom;

use crate::error::{Error, Result};
use crate::rng;

pub type VertexId = u64;

/// Normalized undirected edge set.
///
/// `edges` holds canonical `(u, v)` pairs with `u < v`, sorted and free of
/// duplicates. `first_seen` records the order in which vertex ids first
/// appeared in the source text, which is what [`StreamOrder::AsRead`]
/// replays.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EdgeList {
    edges: Vec<(VertexId, VertexId)>,
    first_seen: Vec<VertexId>,
}

impl EdgeList {
    /// Builds a normalized list from raw pairs in arrival order.
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut seen = HashSet::new();
        let mut first_seen = Vec::new();
        let mut edges = Vec::new();
        for (u, v) in pairs {
            if u == v {
                continue;
            }
            for id in [u, v] {
                if seen.insert(id) {
                    first_seen.push(id);
                }
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        EdgeList { edges, first_seen }
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn first_seen(&self) -> &[VertexId] {
        &self.first_seen
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Writes the canonical pairs back out, one `u v` line each.
    pub fn write_to<W: Write>(&self, mut sink: W) -> Result<()> {
        for &(u, v) in &self.edges {
            writeln!(sink, "{u} {v}")?;
        }
        sink.flush()?;
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut out = Vec::new();
        self.write_to(&mut out)
            .expect("writing to a Vec cannot fail");
        String::from_utf8(out).expect("edge list text is ASCII")
    }
}

pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    read_edge_list(text.as_bytes())
}

pub fn read_edge_list<R: BufRead>(reader: R) -> Result<EdgeList> {
    let mut pairs = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected two vertex ids, got {trimmed:?}"),
            });
        };
        let parse = |tok: &str| {
            tok.parse::<VertexId>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        pairs.push((parse(a)?, parse(b)?));
    }
    Ok(EdgeList::from_pairs(pairs))
}

/// Reads an edge-list file, decompressing gzip input transparently.
pub fn load_edge_list(path: &Path) -> Result<EdgeList> {
    let open = || -> Result<EdgeList> {
        let mut file = BufReader::new(File::open(path)?);
        let gzipped = file.fill_buf()?.starts_with(&[0x1f, 0x8b]);
        if gzipped {
            read_edge_list(BufReader::new(MultiGzDecoder::new(file)))
        } else {
            read_edge_list(file)
        }
    };
    open().map_err(|e| e.in_file(path))
}

/// Reads raw bytes, decompressing gzip input transparently.
pub fn decode_bytes(bytes: &[u8]) -> Result<EdgeList> {
    if bytes.starts_with(&[0x1f, 0x8b]) {
        let mut text = Vec::new();
        MultiGzDecoder::new(bytes).read_to_end(&mut text)?;
        read_edge_list(text.as_slice())
    } else {
        read_edge_list(bytes)
    }
}

/// Symmetric adjacency over the as-read vertex ids, stored in CSR form.
#[derive(Debug, Clone, Default)]
pub struct AdjacencyGraph {
    ids: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    offsets: Vec<usize>,
    targets: Vec<VertexId>,
    edge_count: usize,
}

impl AdjacencyGraph {
    pub fn from_edge_list(list: &EdgeList) -> Self {
        let ids = list.first_seen().to_vec();
        let index: HashMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

        let mut degree = vec![0usize; ids.len()];
        for &(u, v) in list.edges() {
            degree[index[&u]] += 1;
            degree[index[&v]] += 1;
        }
        let mut offsets = Vec::with_capacity(ids.len() + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }

        let mut cursor = offsets[..ids.len()].to_vec();
        let mut targets = vec![0; offsets[ids.len()]];
        for &(u, v) in list.edges() {
            let (iu, iv) = (index[&u], index[&v]);
            targets[cursor[iu]] = v;
            cursor[iu] += 1;
            targets[cursor[iv]] = u;
            cursor[iv] += 1;
        }
        for i in 0..ids.len() {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }

        AdjacencyGraph {
            ids,
            index,
            offsets,
            targets,
            edge_count: list.len(),
        }
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    /// Vertex ids in first-appearance order.
    pub fn vertices(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.index.contains_key(&id)
    }

    pub fn neighbors(&self, id: VertexId) -> Option<&[VertexId]> {
        self.index.get(&id).map(|&i| self.neighbors_at(i))
    }

    pub fn degree(&self, id: VertexId) -> Option<usize> {
        self.neighbors(id).map(<[_]>::len)
    }

    fn neighbors_at(&self, i: usize) -> &[VertexId] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.ids.iter().enumerate().flat_map(move |(i, &u)| {
            self.neighbors_at(i)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    pub fn record(&self, id: VertexId) -> Option<VertexRecord> {
        self.index.get(&id).map(|&i| self.record_at(i))
    }

    fn record_at(&self, i: usize) -> VertexRecord {
        VertexRecord {
            id: self.ids[i],
            neighbors: self.neighbors_at(i).to_vec(),
        }
    }
}

pub fn build_adjacency(list: &EdgeList) -> AdjacencyGraph {
    AdjacencyGraph::from_edge_list(list)
}

/// One stream tuple: a vertex together with its complete neighbor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexRecord {
    pub id: VertexId,
    pub neighbors: Vec<VertexId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StreamOrder {
    #[default]
    AsRead,
    UniformRandom(u64),
}

impl StreamOrder {
    pub fn label(&self) -> &'static str {
        match self {
            StreamOrder::AsRead => "as-read",
            StreamOrder::UniformRandom(_) => "random",
        }
    }
}

/// Single-consumer iterator replaying a graph as vertex records.
#[derive(Debug)]
pub struct VertexStream<'g> {
    graph: &'g AdjacencyGraph,
    order: Vec<usize>,
    next: usize,
}

impl Iterator for VertexStream<'_> {
    type Item = VertexRecord;

    fn next(&mut self) -> Option<VertexRecord> {
        let &i = self.order.get(self.next)?;
        self.next += 1;
        Some(self.graph.record_at(i))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.order.len() - self.next;
        (left, Some(left))
    }
}

impl ExactSizeIterator for VertexStream<'_> {}

pub fn make_stream(graph: &AdjacencyGraph, order: StreamOrder) -> VertexStream<'_> {
    let mut positions: Vec<usize> = (0..graph.n()).collect();
    if let StreamOrder::UniformRandom(seed) = order {
        positions.shuffle(&mut rng::stream_rng(seed));
    }
    VertexStream {
        graph,
        order: positions,
        next: 0,
    }
}
