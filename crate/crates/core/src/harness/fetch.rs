//! Dataset download cache with checksum verification.
//!
//! A manifest lists one dataset per line:
//!
//! ```text
//! # name     url                                           sha256  n     m
//! ca-GrQc    https://snap.stanford.edu/data/ca-GrQc.txt.gz  -       5242  14496
//! ```
//!
//! A checksum of `-` means "not pinned": the digest of the first download
//! is reported so it can be pasted back into the manifest.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graph::{build_adjacency, decode_bytes};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetEntry {
    pub name: String,
    pub url: String,
    pub sha256: Option<String>,
    pub expected_n: usize,
    pub expected_m: usize,
}

impl DatasetEntry {
    /// Cache file name: the last URL path segment, or the dataset name.
    pub fn file_name(&self) -> String {
        self.url
            .rsplit('/')
            .next()
            .filter(|s| !s.is_empty() && !s.contains(['?', '#']))
            .map(str::to_string)
            .unwrap_or_else(|| self.name.clone())
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<DatasetEntry>> {
    let mut entries = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fail = |message: String| Error::Parse {
            line: idx + 1,
            message,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let [name, url, sha, n, m] = tokens[..] else {
            return Err(fail(format!(
                "expected `name url sha256 n m`, got {} fields",
                tokens.len()
            )));
        };
        let sha256 = match sha {
            "-" => None,
            s if s.len() == 64 && s.bytes().all(|b| b.is_ascii_hexdigit()) => {
                Some(s.to_ascii_lowercase())
            }
            s => return Err(fail(format!("invalid sha256 {s:?}"))),
        };
        entries.push(DatasetEntry {
            name: name.to_string(),
            url: url.to_string(),
            sha256,
            expected_n: n
                .parse()
                .map_err(|_| fail(format!("invalid vertex count {n:?}")))?,
            expected_m: m
                .parse()
                .map_err(|_| fail(format!("invalid edge count {m:?}")))?,
        });
    }
    Ok(entries)
}

pub trait Downloader {
    fn download(&self, url: &str) -> Result<Vec<u8>>;
}

#[derive(Debug, Default, Clone, Copy)]
pub struct HttpDownloader;

impl Downloader for HttpDownloader {
    fn download(&self, url: &str) -> Result<Vec<u8>> {
        let fail = |e: &dyn std::fmt::Display| Error::Download {
            url: url.to_string(),
            message: e.to_string(),
        };
        let response = ureq::get(url).call().map_err(|e| fail(&e))?;
        let mut bytes = Vec::new();
        response
            .into_body()
            .into_reader()
            .read_to_end(&mut bytes)
            .map_err(|e| fail(&e))?;
        Ok(bytes)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchedDataset {
    pub name: String,
    pub path: PathBuf,
    pub sha256: String,
    pub downloaded: bool,
    pub n: usize,
    pub m: usize,
    pub expected_n: usize,
    pub expected_m: usize,
}

impl FetchedDataset {
    pub fn matches_expected(&self) -> bool {
        self.n == self.expected_n && self.m == self.expected_m
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Resolves every manifest entry to a verified local file. Entries fail
/// independently.
pub fn fetch_datasets(
    manifest: &[DatasetEntry],
    cache_dir: &Path,
    offline: bool,
    downloader: &dyn Downloader,
) -> Vec<Result<FetchedDataset>> {
    manifest
        .iter()
        .map(|entry| fetch_one(entry, cache_dir, offline, downloader))
        .collect()
}

pub fn fetch_one(
    entry: &DatasetEntry,
    cache_dir: &Path,
    offline: bool,
    downloader: &dyn Downloader,
) -> Result<FetchedDataset> {
    let path = cache_dir.join(entry.file_name());
    let verify = |bytes: &[u8]| -> Result<String> {
        let actual = sha256_hex(bytes);
        match &entry.sha256 {
            Some(expected) if *expected != actual => Err(Error::Integrity {
                name: entry.name.clone(),
                expected: expected.clone(),
                actual,
            }),
            _ => Ok(actual),
        }
    };

    let cached = match fs::read(&path) {
        Ok(bytes) => Some(bytes),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => None,
        Err(e) => return Err(Error::from(e).in_file(&path)),
    };

    let (bytes, digest, downloaded) = match cached.map(|b| verify(&b).map(|d| (b, d))) {
        Some(Ok((bytes, digest))) => (bytes, digest, false),
        Some(Err(err)) if offline => return Err(err),
        None if offline => {
            return Err(Error::Unavailable {
                name: entry.name.clone(),
            })
        }
        // Missing or corrupt: one download attempt.
        Some(Err(_)) | None => {
            let bytes = downloader.download(&entry.url)?;
            let digest = verify(&bytes)?;
            fs::create_dir_all(cache_dir)?;
            let partial = path.with_extension("partial");
            fs::write(&partial, &bytes)?;
            fs::rename(&partial, &path)?;
            (bytes, digest, true)
        }
    };

    let graph = build_adjacency(&decode_bytes(&bytes).map_err(|e| e.in_file(&path))?);
    Ok(FetchedDataset {
        name: entry.name.clone(),
        path,
        sha256: digest,
        downloaded,
        n: graph.n(),
        m: graph.m(),
        expected_n: entry.expected_n,
        expected_m: entry.expected_m,
    })
}
