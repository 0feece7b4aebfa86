//! Comparative benchmark over generated datasets: union-find shuffle with and
//! without the local phase against alternating Large-star/Small-star.
//! Rounds and shuffled record counts are deterministic; wall times are not.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::Serialize;

use crate::baselines::run_alternating;
use crate::engine::{run, EngineConfig, RunMetrics};
use crate::error::Result;
use crate::generators::{generate, GenSpec, GraphKind};
use crate::types::Edge;

pub const CSV_HEADER: [&str; 6] = ["dataset", "algorithm", "edges", "rounds", "shuffle_records", "wall_time_ms"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Ufs,
    UfsNoLocalUf,
    LargeSmallStar,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ufs, Algorithm::UfsNoLocalUf, Algorithm::LargeSmallStar];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ufs => "ufs",
            Algorithm::UfsNoLocalUf => "ufs_no_local_uf",
            Algorithm::LargeSmallStar => "large_small_star",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    /// One small graph of every kind.
    Quick,
    /// One graph of every kind around 10^5 nodes.
    Standard,
    Chains,
    Cliques,
    Skewed,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Quick, Suite::Standard, Suite::Chains, Suite::Cliques, Suite::Skewed];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Quick => "quick",
            Suite::Standard => "standard",
            Suite::Chains => "chains",
            Suite::Cliques => "cliques",
            Suite::Skewed => "skewed",
        }
    }

    /// Named generator specs of this suite, derived from `seed`.
    pub fn datasets(self, seed: u64) -> Vec<(String, GenSpec)> {
        let named = |spec: GenSpec| (dataset_name(&spec), spec);
        match self {
            Suite::Quick => vec![
                named(GenSpec::sparse(10_000, 10_000, seed)),
                named(GenSpec::clique_clusters(64, 32, 16, seed)),
                named(GenSpec::chain(4096, seed)),
                named(GenSpec::skewed_lcc(10_000, 16, 2.0, seed)),
            ],
            Suite::Standard => vec![
                named(GenSpec::sparse(100_000, 100_000, seed)),
                named(GenSpec::clique_clusters(1024, 48, 256, seed)),
                named(GenSpec::chain(1 << 16, seed)),
                named(GenSpec::skewed_lcc(100_000, 32, 2.0, seed)),
            ],
            Suite::Chains => (8..=16).map(|m| named(GenSpec::chain(1 << m, seed))).collect(),
            Suite::Cliques => [(256, 32), (128, 64), (64, 128)]
                .into_iter()
                .map(|(clusters, size)| named(GenSpec::clique_clusters(clusters, size, clusters / 4, seed)))
                .collect(),
            Suite::Skewed => [(10_000, 8), (30_000, 16), (100_000, 32)]
                .into_iter()
                .map(|(n, hubs)| named(GenSpec::skewed_lcc(n, hubs, 2.0, seed)))
                .collect(),
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown suite `{s}` (expected one of quick, standard, chains, cliques, skewed)"))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn dataset_name(spec: &GenSpec) -> String {
    match spec.kind {
        GraphKind::Sparse => format!("sparse-n{}-e{}", spec.node_count, spec.edge_count),
        GraphKind::CliqueClusters => format!("clique_clusters-{}x{}", spec.node_count / spec.cluster_size, spec.cluster_size),
        GraphKind::Chain => format!("chain-n{:06}", spec.node_count),
        GraphKind::SkewedLcc => format!("skewed_lcc-n{:06}-h{}", spec.node_count, spec.hub_count),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub dataset: String,
    pub algorithm: String,
    pub edges: u64,
    pub rounds: u64,
    pub shuffle_records: u64,
    pub wall_time_ms: f64,
}

impl BenchRow {
    fn from_metrics(dataset: &str, algorithm: Algorithm, m: &RunMetrics) -> Self {
        BenchRow {
            dataset: dataset.to_owned(),
            algorithm: algorithm.name().to_owned(),
            edges: m.input_edges,
            rounds: m.total_rounds() as u64,
            shuffle_records: m.total_shuffle_records(),
            wall_time_ms: (m.wall_time_ms * 1000.0).round() / 1000.0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn row(&self, dataset: &str, algorithm: Algorithm) -> Option<&BenchRow> {
        self.rows.iter().find(|r| r.dataset == dataset && r.algorithm == algorithm.name())
    }

    fn sort(&mut self) {
        self.rows.sort_by(|a, b| (&a.dataset, &a.algorithm).cmp(&(&b.dataset, &b.algorithm)));
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        if self.rows.is_empty() {
            out.write_record(CSV_HEADER)?;
        }
        for row in &self.rows {
            out.serialize(row)?;
        }
        out.flush()?;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub seed: u64,
    pub partitions: usize,
    pub workers: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig { seed: 1, partitions: 16, workers: EngineConfig::default().worker_count }
    }
}

pub fn run_algorithm(algorithm: Algorithm, edges: &[Edge], config: &BenchConfig) -> Result<RunMetrics> {
    let engine = EngineConfig { worker_count: config.workers, ..EngineConfig::with_partitions(config.partitions) };
    Ok(match algorithm {
        Algorithm::Ufs => run(edges, &engine)?.1,
        Algorithm::UfsNoLocalUf => run(edges, &EngineConfig { local_uf: false, ..engine })?.1,
        Algorithm::LargeSmallStar => run_alternating(edges, None)?.1,
    })
}

pub fn run_suite(suite: Suite, config: &BenchConfig) -> Result<BenchReport> {
    let mut report = BenchReport::default();
    for (name, spec) in suite.datasets(config.seed) {
        let (edges, _) = generate(&spec)?;
        for algorithm in Algorithm::ALL {
            let metrics = run_algorithm(algorithm, &edges, config)?;
            report.rows.push(BenchRow::from_metrics(&name, algorithm, &metrics));
        }
    }
    report.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_shape() {
        let cfg = BenchConfig { workers: 1, ..Default::default() };
        let report = run_suite(Suite::Quick, &cfg).unwrap();
        assert_eq!(report.rows.len(), Suite::Quick.datasets(1).len() * Algorithm::ALL.len());
        let keys: Vec<_> = report.rows.iter().map(|r| (r.dataset.clone(), r.algorithm.clone())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);

        let mut buf = Vec::new();
        report.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("dataset,algorithm,edges,rounds,shuffle_records,wall_time_ms\n"));
        assert_eq!(text.lines().count(), report.rows.len() + 1);
    }

    #[test]
    fn empty_report_still_has_header() {
        let mut buf = Vec::new();
        BenchReport::default().write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "dataset,algorithm,edges,rounds,shuffle_records,wall_time_ms\n");
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("huge".parse::<Suite>().is_err());
    }
}
