#![allow(dead_code)]

//! Shared fixtures: seeded graph generators and dataset lookup.
//!
//! Real datasets are read from `$WSTREAM_DATA_DIR` (default: `data/` at the
//! workspace root). When a file is missing, a seeded generator with the
//! same vertex count and a similar structure stands in, and the caller is
//! told which one it got.

pub mod oracle;

use std::collections::HashSet;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wstream::graph::{build_adjacency, load_edge_list, AdjacencyGraph, EdgeList, VertexId};

pub fn graph_from_pairs(pairs: impl IntoIterator<Item = (VertexId, VertexId)>) -> AdjacencyGraph {
    build_adjacency(&EdgeList::from_pairs(pairs))
}

/// G(n, p) over ids `0..n`.
pub fn erdos_renyi(n: u64, p: f64, seed: u64) -> AdjacencyGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                pairs.push((u, v));
            }
        }
    }
    graph_from_pairs(pairs)
}

/// Triangulated `rows x cols` grid with a random diagonal in every cell;
/// a finite-element mesh stand-in.
pub fn triangulated_mesh(rows: u64, cols: u64, seed: u64) -> AdjacencyGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: u64, c: u64| r * cols + c;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
            if r + 1 < rows && c + 1 < cols {
                if rng.gen_bool(0.5) {
                    pairs.push((id(r, c), id(r + 1, c + 1)));
                } else {
                    pairs.push((id(r, c + 1), id(r + 1, c)));
                }
            }
        }
    }
    graph_from_pairs(pairs)
}

/// Co-authorship stand-in: authors grouped into heavy-tailed communities,
/// each paper a small clique drawn mostly from one community with
/// preferential reuse of prolific authors. Every vertex gets at least one
/// paper; papers are added until `target_m` edges exist.
pub fn collaboration(n: u64, target_m: usize, seed: u64) -> AdjacencyGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut communities: Vec<Vec<VertexId>> = Vec::new();
    let mut next = 0;
    while next < n {
        // Pareto-ish sizes between 4 and 300.
        let u: f64 = rng.gen_range(0.0..1.0);
        let size = ((4.0 / (1.0 - u).powf(1.0 / 1.3)) as u64)
            .clamp(4, 300)
            .min(n - next);
        communities.push((next..next + size).collect());
        next += size;
    }
    let total: usize = communities.iter().map(Vec::len).sum();

    let mut edges: HashSet<(VertexId, VertexId)> = HashSet::new();
    let mut papers = vec![1u64; n as usize];
    let add_paper = |authors: &[VertexId], edges: &mut HashSet<_>, papers: &mut Vec<u64>| {
        for (i, &a) in authors.iter().enumerate() {
            papers[a as usize] += 1;
            for &b in &authors[i + 1..] {
                if a != b {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
    };
    let paper_size = |rng: &mut ChaCha8Rng| match rng.gen_range(0..100) {
        0..=44 => 2,
        45..=74 => 3,
        75..=89 => 4,
        90..=96 => 5,
        _ => rng.gen_range(6..=9),
    };

    // Coverage pass: walk each community, grouping fresh authors.
    for community in &communities {
        let mut i = 0;
        while i < community.len() {
            let s = paper_size(&mut rng).min(community.len());
            let mut authors: Vec<VertexId> = community[i..(i + s).min(community.len())].to_vec();
            while authors.len() < 2 && community.len() > 1 {
                let extra = community[rng.gen_range(0..community.len())];
                if !authors.contains(&extra) {
                    authors.push(extra);
                }
            }
            if authors.len() == 1 {
                // Singleton community: attach to a random outside author.
                let other = rng.gen_range(0..n);
                if other != authors[0] {
                    authors.push(other);
                }
            }
            add_paper(&authors, &mut edges, &mut papers);
            i += s;
        }
    }

    while edges.len() < target_m {
        let mut pick = rng.gen_range(0..total);
        let community = communities
            .iter()
            .find(|c| {
                if pick < c.len() {
                    true
                } else {
                    pick -= c.len();
                    false
                }
            })
            .unwrap();
        let s = paper_size(&mut rng);
        let weight: u64 = community.iter().map(|&v| papers[v as usize]).sum();
        let mut authors = Vec::with_capacity(s);
        for _ in 0..(4 * s) {
            if authors.len() == s {
                break;
            }
            let a = if rng.gen_bool(0.08) {
                rng.gen_range(0..n)
            } else {
                let mut w = rng.gen_range(0..weight);
                *community
                    .iter()
                    .find(|&&v| {
                        if w < papers[v as usize] {
                            true
                        } else {
                            w -= papers[v as usize];
                            false
                        }
                    })
                    .unwrap()
            };
            if !authors.contains(&a) {
                authors.push(a);
            }
        }
        if authors.len() >= 2 {
            add_paper(&authors, &mut edges, &mut papers);
        }
    }

    let mut pairs: Vec<_> = edges.into_iter().collect();
    pairs.sort_unstable();
    graph_from_pairs(pairs)
}

/// Preferential attachment: each new vertex links to `per_vertex` distinct
/// earlier vertices chosen proportionally to degree.
pub fn preferential_attachment(n: u64, per_vertex: usize, seed: u64) -> AdjacencyGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let core = per_vertex as u64 + 1;
    let mut pairs = Vec::new();
    let mut endpoints: Vec<VertexId> = Vec::new();
    for u in 0..core {
        for v in (u + 1)..core {
            pairs.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    for u in core..n {
        let mut targets = HashSet::new();
        while targets.len() < per_vertex {
            targets.insert(endpoints[rng.gen_range(0..endpoints.len())]);
        }
        let mut targets: Vec<_> = targets.into_iter().collect();
        targets.sort_unstable();
        for v in targets {
            pairs.push((u, v));
            endpoints.extend([u, v]);
        }
    }
    graph_from_pairs(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    File,
    Surrogate,
}

pub struct Dataset {
    pub name: &'static str,
    pub graph: AdjacencyGraph,
    pub source: Source,
}

impl Dataset {
    pub fn label(&self) -> String {
        match self.source {
            Source::File => self.name.to_string(),
            Source::Surrogate => format!(
                "{} (surrogate n={} m={})",
                self.name,
                self.graph.n(),
                self.graph.m()
            ),
        }
    }
}

pub fn data_dir() -> PathBuf {
    std::env::var_os("WSTREAM_DATA_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../data")))
}

fn candidates(name: &str) -> &'static [&'static str] {
    match name {
        "3elt" => &["3elt.txt", "3elt.txt.gz", "3elt.edges"],
        "4elt" => &["4elt.txt", "4elt.txt.gz", "4elt.edges"],
        "GrQc" => &["ca-GrQc.txt.gz", "ca-GrQc.txt", "GrQc.txt"],
        "Wiki-Vote" => &["wiki-Vote.txt.gz", "wiki-Vote.txt", "Wiki-Vote.txt"],
        _ => &[],
    }
}

fn surrogate(name: &str) -> AdjacencyGraph {
    match name {
        "3elt" => triangulated_mesh(60, 70, 3),
        "4elt" => triangulated_mesh(102, 153, 4),
        "GrQc" => collaboration(5242, 14496, 5),
        "Wiki-Vote" => preferential_attachment(7115, 14, 7),
        other => panic!("no surrogate for {other}"),
    }
}

/// The named dataset from disk if present, otherwise its stand-in.
pub fn dataset(name: &'static str) -> Dataset {
    let dir = data_dir();
    for file in candidates(name) {
        let path = dir.join(file);
        if path.exists() {
            let list = load_edge_list(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
            return Dataset {
                name,
                graph: build_adjacency(&list),
                source: Source::File,
            };
        }
    }
    Dataset {
        name,
        graph: surrogate(name),
        source: Source::Surrogate,
    }
}
