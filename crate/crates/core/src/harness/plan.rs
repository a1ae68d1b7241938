use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::baselines::{Baseline, HashConfig, HashMix, LdgConfig};
use crate::error::{Error, Result};
use crate::graph::StreamOrder;
use crate::metrics::Algorithm;
use crate::wstream::PartitionerConfig;

/// Seeds used when a plan does not list any.
pub const DEFAULT_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];

/// Window sizes of the standard sweep.
pub const PAPER_WINDOWS: [usize; 8] = [100, 200, 300, 400, 500, 600, 700, 800];
pub const PAPER_KS: [usize; 4] = [2, 4, 8, 16];
pub const PAPER_SLACKS: [u64; 3] = [50, 100, 150];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgorithmKind {
    Hashing,
    Ldg,
    WStream,
}

impl AlgorithmKind {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmKind::Hashing => "hashing",
            AlgorithmKind::Ldg => "ldg",
            AlgorithmKind::WStream => "wstream",
        }
    }

    fn uses_window(&self) -> bool {
        matches!(self, AlgorithmKind::WStream)
    }

    fn uses_epsilon(&self) -> bool {
        matches!(self, AlgorithmKind::Ldg)
    }
}

impl fmt::Display for AlgorithmKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgorithmKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "wstream" => Ok(AlgorithmKind::WStream),
            "ldg" => Ok(AlgorithmKind::Ldg),
            "hashing" | "hash" => Ok(AlgorithmKind::Hashing),
            other => Err(Error::Config(format!("unknown algorithm {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderKind {
    AsRead,
    #[default]
    Random,
}

impl OrderKind {
    pub fn with_seed(self, seed: u64) -> StreamOrder {
        match self {
            OrderKind::AsRead => StreamOrder::AsRead,
            OrderKind::Random => StreamOrder::UniformRandom(seed),
        }
    }
}

impl FromStr for OrderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "as-read" | "asread" | "sequential" => Ok(OrderKind::AsRead),
            "random" | "uniform" => Ok(OrderKind::Random),
            other => Err(Error::Config(format!("unknown stream order {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentPlan {
    pub datasets: Vec<PathBuf>,
    pub algorithms: Vec<AlgorithmKind>,
    pub ks: Vec<usize>,
    pub windows: Vec<usize>,
    pub slacks: Vec<u64>,
    pub epsilons: Vec<f64>,
    pub seeds: Vec<u64>,
    pub order: OrderKind,
    pub co_assign: bool,
    pub hash_mix: HashMix,
    /// Worker threads; `None` uses all cores.
    pub jobs: Option<usize>,
}

impl Default for ExperimentPlan {
    fn default() -> Self {
        ExperimentPlan {
            datasets: Vec::new(),
            algorithms: vec![AlgorithmKind::WStream],
            ks: vec![2],
            windows: vec![100],
            slacks: vec![100],
            epsilons: vec![0.0],
            seeds: DEFAULT_SEEDS.to_vec(),
            order: OrderKind::Random,
            co_assign: false,
            hash_mix: HashMix::SplitMix64,
            jobs: None,
        }
    }
}

/// One configuration of the cross-product. Axes an algorithm ignores are
/// `None` and collapse to a single run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSpec {
    pub dataset: usize,
    pub algorithm: AlgorithmKind,
    pub k: usize,
    pub window: Option<usize>,
    pub slack: Option<u64>,
    pub epsilon: Option<f64>,
    pub seed: u64,
    pub order: StreamOrder,
    pub co_assign: bool,
    pub hash_mix: HashMix,
}

impl RunSpec {
    pub fn algorithm(&self) -> Algorithm {
        match self.algorithm {
            AlgorithmKind::WStream => Algorithm::WStream(PartitionerConfig {
                k: self.k,
                window: self.window.unwrap_or(1),
                slack: self.slack.unwrap_or(0),
                seed: self.seed,
                co_assign: self.co_assign,
                order: self.order,
            }),
            AlgorithmKind::Ldg => Algorithm::Baseline(Baseline::Ldg(LdgConfig {
                k: self.k,
                epsilon: self.epsilon.unwrap_or(0.0),
                seed: self.seed,
                order: self.order,
            })),
            AlgorithmKind::Hashing => Algorithm::Baseline(Baseline::Hashing(HashConfig {
                k: self.k,
                mix: self.hash_mix,
                order: self.order,
            })),
        }
    }
}

impl ExperimentPlan {
    pub fn validate(&self) -> Result<()> {
        let empty = |name: &str| Error::Config(format!("plan has no {name} values"));
        if self.algorithms.is_empty() {
            return Err(empty("algorithm"));
        }
        if self.ks.is_empty() {
            return Err(empty("k"));
        }
        if self.seeds.is_empty() {
            return Err(empty("seed"));
        }
        let wstream = self.algorithms.contains(&AlgorithmKind::WStream);
        if wstream && self.windows.is_empty() {
            return Err(empty("window"));
        }
        if wstream && self.slacks.is_empty() {
            return Err(empty("slack"));
        }
        if self.algorithms.contains(&AlgorithmKind::Ldg) && self.epsilons.is_empty() {
            return Err(empty("epsilon"));
        }
        if self.ks.contains(&0) {
            return Err(Error::Config("k values must be at least 1".into()));
        }
        if self.windows.contains(&0) {
            return Err(Error::Config("window sizes must be at least 1".into()));
        }
        if self.epsilons.iter().any(|e| !e.is_finite() || *e < 0.0) {
            return Err(Error::Config(
                "epsilon values must be finite and >= 0".into(),
            ));
        }
        if self.jobs == Some(0) {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// The cross-product, in plan order.
    pub fn runs(&self) -> Vec<RunSpec> {
        let mut out = Vec::new();
        for dataset in 0..self.datasets.len() {
            for &algorithm in &self.algorithms {
                let windows = axis(algorithm.uses_window(), &self.windows);
                let slacks = axis(algorithm.uses_window(), &self.slacks);
                let epsilons = axis(algorithm.uses_epsilon(), &self.epsilons);
                for &k in &self.ks {
                    for &window in &windows {
                        for &slack in &slacks {
                            for &epsilon in &epsilons {
                                for &seed in &self.seeds {
                                    out.push(RunSpec {
                                        dataset,
                                        algorithm,
                                        k,
                                        window,
                                        slack,
                                        epsilon,
                                        seed,
                                        order: self.order.with_seed(seed),
                                        co_assign: self.co_assign,
                                        hash_mix: self.hash_mix,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Parses a line-oriented `key=value` plan; list values are
    /// comma-separated and `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut plan = ExperimentPlan::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let at = |e: Error| Error::Config(format!("plan line {}: {e}", idx + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at(Error::Config(format!("expected key=value, got {line:?}"))))?;
            plan.set(key.trim(), value.trim()).map_err(at)?;
        }
        plan.validate()?;
        Ok(plan)
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        match key {
            "dataset" | "datasets" => self
                .datasets
                .extend(list::<String>(value)?.into_iter().map(PathBuf::from)),
            "algorithm" | "algorithms" | "algo" => self.algorithms = list(value)?,
            "k" => self.ks = list(value)?,
            "window" | "windows" => self.windows = list(value)?,
            "slack" | "slacks" => self.slacks = list(value)?,
            "epsilon" | "epsilons" => self.epsilons = list(value)?,
            "seed" | "seeds" => self.seeds = list(value)?,
            "order" => self.order = value.parse()?,
            "co_assign" | "co-assign" => self.co_assign = scalar(value)?,
            "hash_mix" | "hash-mix" => {
                self.hash_mix = match value {
                    "splitmix64" => HashMix::SplitMix64,
                    "identity" | "none" => HashMix::Identity,
                    other => return Err(Error::Config(format!("unknown hash mix {other:?}"))),
                }
            }
            "jobs" => self.jobs = Some(scalar(value)?),
            other => return Err(Error::Config(format!("unknown plan key {other:?}"))),
        }
        Ok(())
    }
}

fn axis<T: Copy>(used: bool, values: &[T]) -> Vec<Option<T>> {
    if used {
        values.iter().copied().map(Some).collect()
    } else {
        vec![None]
    }
}

fn scalar<T: FromStr>(value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value {value:?}")))
}

fn list<T: FromStr>(value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(scalar)
        .collect()
}
