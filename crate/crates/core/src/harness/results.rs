use std::io::{Read, Write};

use crate::error::{Error, Result};

pub const COLUMNS: [&str; 14] = [
    "dataset",
    "algorithm",
    "k",
    "window",
    "slack",
    "epsilon",
    "seed",
    "order",
    "n",
    "m",
    "cut_edges",
    "edge_cut_ratio",
    "load_imbalance",
    "elapsed_seconds",
];

/// One experiment outcome. Parameters the algorithm does not use are
/// empty in the CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub dataset: String,
    pub algorithm: String,
    pub k: usize,
    pub window: Option<usize>,
    pub slack: Option<u64>,
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub order: String,
    pub n: usize,
    pub m: usize,
    pub cut_edges: usize,
    pub edge_cut_ratio: f64,
    pub load_imbalance: f64,
    pub elapsed_seconds: f64,
}

impl ResultRow {
    fn fields(&self) -> [String; 14] {
        fn opt<T: ToString>(v: Option<T>) -> String {
            v.map(|v| v.to_string()).unwrap_or_default()
        }
        [
            self.dataset.clone(),
            self.algorithm.clone(),
            self.k.to_string(),
            opt(self.window),
            opt(self.slack),
            self.epsilon.map(|e| format!("{e:.6}")).unwrap_or_default(),
            self.seed.to_string(),
            self.order.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.cut_edges.to_string(),
            format!("{:.6}", self.edge_cut_ratio),
            format!("{:.6}", self.load_imbalance),
            format!("{:.6}", self.elapsed_seconds),
        ]
    }

    fn from_record(record: &csv::StringRecord, line: usize) -> Result<Self> {
        let fail = |col: &str| Error::Parse {
            line,
            message: format!("invalid {col} value"),
        };
        let get = |i: usize| record.get(i).unwrap_or("");
        fn req<T: std::str::FromStr>(s: &str) -> Option<T> {
            s.parse().ok()
        }
        fn opt<T: std::str::FromStr>(s: &str) -> Option<Option<T>> {
            if s.is_empty() {
                Some(None)
            } else {
                s.parse().ok().map(Some)
            }
        }
        if record.len() != COLUMNS.len() {
            return Err(Error::Parse {
                line,
                message: format!("expected {} columns, got {}", COLUMNS.len(), record.len()),
            });
        }
        Ok(ResultRow {
            dataset: get(0).to_string(),
            algorithm: get(1).to_string(),
            k: req(get(2)).ok_or_else(|| fail("k"))?,
            window: opt(get(3)).ok_or_else(|| fail("window"))?,
            slack: opt(get(4)).ok_or_else(|| fail("slack"))?,
            epsilon: opt(get(5)).ok_or_else(|| fail("epsilon"))?,
            seed: req(get(6)).ok_or_else(|| fail("seed"))?,
            order: get(7).to_string(),
            n: req(get(8)).ok_or_else(|| fail("n"))?,
            m: req(get(9)).ok_or_else(|| fail("m"))?,
            cut_edges: req(get(10)).ok_or_else(|| fail("cut_edges"))?,
            edge_cut_ratio: req(get(11)).ok_or_else(|| fail("edge_cut_ratio"))?,
            load_imbalance: req(get(12)).ok_or_else(|| fail("load_imbalance"))?,
            elapsed_seconds: req(get(13)).ok_or_else(|| fail("elapsed_seconds"))?,
        })
    }
}

/// Stable sort on (dataset, algorithm, k, window, slack, seed).
pub fn sort_rows(rows: &mut [ResultRow]) {
    rows.sort_by(|a, b| {
        (&a.dataset, &a.algorithm, a.k, a.window, a.slack, a.seed).cmp(&(
            &b.dataset,
            &b.algorithm,
            b.k,
            b.window,
            b.slack,
            b.seed,
        ))
    });
}

pub fn emit_csv<W: Write>(rows: &[ResultRow], sink: W) -> Result<()> {
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    out.write_record(COLUMNS)?;
    for row in rows {
        out.write_record(row.fields())?;
    }
    out.flush()?;
    Ok(())
}

/// Reads rows in the [`COLUMNS`] layout, e.g. results produced elsewhere
/// and merged into a report.
pub fn read_csv<R: Read>(source: R) -> Result<Vec<ResultRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().ne(COLUMNS.iter().copied()) {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header {}", COLUMNS.join(",")),
        });
    }
    reader
        .records()
        .enumerate()
        .map(|(i, record)| ResultRow::from_record(&record?, i + 2))
        .collect()
}
