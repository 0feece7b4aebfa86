//! Three-phase union-find shuffle over `k` simulated partitions.
//!
//! 1. Local union-find on each contiguous input partition.
//! 2. Shuffle rounds: group by child, checkpoint children with a unique
//!    parent, elect a parent for the rest, repeat until nothing is emitted.
//! 3. Compression rounds on the symmetric expansion of the phase-2
//!    checkpoints, repeated until every group is pruned.
//!
//! The compression checkpoints are then consolidated into a star labeling.
//! Within a round, buckets are independent; the shuffle between rounds is the
//! only exchange.

mod checkpoint;
mod consolidate;
mod exec;
mod partition;
mod phases;

use std::fmt;
use std::time::Instant;

use serde::{Deserialize, Serialize};

pub use checkpoint::{decode_records, encode_records, CheckpointStore, CheckpointTag, RECORD_BYTES, SPILL_DIR_ENV};
pub use consolidate::{consolidate, consolidate_records};
pub use exec::Executor;
pub use partition::{bucket_of, child_groups, load_partitions, shuffle_by_child, PartitionSet, DEFAULT_HASH_SEED};
pub use phases::{
    compress_bucket, initial_records_without_local_uf, path_compression_round, process_bucket,
    process_partition_round, self_join, weighted_union_phase, weighted_union_phase_per_edge, RoundOutput,
};

use crate::error::{Result, UfsError};
use crate::labeling::ComponentLabeling;
use crate::types::{Edge, Election, PairRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Local,
    Shuffle,
    Compression,
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Phase::Local => "local union-find phase",
            Phase::Shuffle => "shuffle phase",
            Phase::Compression => "path-compression phase",
        })
    }
}

/// How the local union-find reports its result.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum LocalEmission {
    /// One `(node, root)` per node of the partition.
    #[default]
    Flattened,
    /// One record per merging edge plus new-parent announcements.
    PerEdge,
}

#[derive(Clone, Debug)]
pub struct EngineConfig {
    /// Number of logical partitions.
    pub k: usize,
    pub election: Election,
    pub local_uf: bool,
    pub local_emission: LocalEmission,
    /// Per-phase round cap. `None` derives it from the node count.
    pub max_rounds: Option<usize>,
    pub hash_seed: u64,
    pub worker_count: usize,
    /// Live records above which checkpoints spill to disk. `None` never spills.
    pub memory_budget: Option<usize>,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            k: 8,
            election: Election::Min,
            local_uf: true,
            local_emission: LocalEmission::Flattened,
            max_rounds: None,
            hash_seed: DEFAULT_HASH_SEED,
            worker_count: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            memory_budget: None,
        }
    }
}

impl EngineConfig {
    pub fn with_partitions(k: usize) -> Self {
        EngineConfig { k, ..Default::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(UfsError::InvalidConfig("partition count k must be at least 1".into()));
        }
        if self.max_rounds == Some(0) {
            return Err(UfsError::InvalidConfig("max_rounds must be at least 1".into()));
        }
        if self.worker_count == 0 {
            return Err(UfsError::InvalidConfig("worker_count must be at least 1".into()));
        }
        Ok(())
    }
}

/// Default round cap: `4 * ceil(log2(nodes + 2)) + 16`.
pub fn default_max_rounds(distinct_nodes: usize) -> usize {
    let n = distinct_nodes as u64 + 2;
    let ceil_log2 = 64 - (n - 1).leading_zeros() as usize;
    4 * ceil_log2 + 16
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunMetrics {
    pub phase2_rounds: usize,
    pub phase3_rounds: usize,
    /// Records entering each round, phase 2 rounds first.
    pub shuffle_records_per_round: Vec<u64>,
    /// Records checkpointed by each round, same indexing.
    pub checkpointed_per_round: Vec<u64>,
    /// Records produced by phase 1, i.e. the first shuffle.
    pub initial_shuffle_volume: u64,
    pub largest_component_size: u64,
    pub input_edges: u64,
    pub wall_time_ms: f64,
}

impl RunMetrics {
    pub fn total_rounds(&self) -> usize {
        self.phase2_rounds + self.phase3_rounds
    }

    pub fn total_shuffle_records(&self) -> u64 {
        self.shuffle_records_per_round.iter().sum()
    }
}

/// Hooks into a run, for tracing and for measuring invariants from outside.
pub trait RoundObserver {
    /// Called with every shuffled partition set before it is processed.
    fn shuffled(&mut self, _phase: Phase, _round: usize, _partitions: &PartitionSet) {}
    /// Called with the records checkpointed by each round.
    fn checkpointed(&mut self, _phase: Phase, _round: usize, _records: &[PairRecord]) {}
}

impl RoundObserver for () {}

pub fn run(edges: &[Edge], config: &EngineConfig) -> Result<(ComponentLabeling, RunMetrics)> {
    run_observed(edges, config, &mut ())
}

pub fn run_observed(
    edges: &[Edge],
    config: &EngineConfig,
    observer: &mut dyn RoundObserver,
) -> Result<(ComponentLabeling, RunMetrics)> {
    config.validate()?;
    let started = Instant::now();
    let exec = Executor::new(config.worker_count)?;
    let mut metrics = RunMetrics { input_edges: edges.len() as u64, ..Default::default() };
    let mut store = CheckpointStore::new();

    // Phase 1
    let partitions = load_partitions(edges, config.k);
    let local = |p: &&[Edge]| match (config.local_uf, config.local_emission) {
        (false, _) => initial_records_without_local_uf(p),
        (true, LocalEmission::Flattened) => weighted_union_phase(p),
        (true, LocalEmission::PerEdge) => weighted_union_phase_per_edge(p),
    };
    let mut live: Vec<PairRecord> = exec.map(&partitions, local).concat();
    metrics.initial_shuffle_volume = live.len() as u64;

    // Phase 2
    let mut cap = config.max_rounds;
    let mut round = 0;
    while !live.is_empty() {
        round += 1;
        spill_if_over_budget(&mut store, config, live.len())?;
        metrics.shuffle_records_per_round.push(live.len() as u64);
        let ps = partition::shuffle_with(&exec, std::mem::take(&mut live), config.k, config.hash_seed, round);
        let limit = *cap.get_or_insert_with(|| default_max_rounds(ps.distinct_children()));
        if round > limit {
            return Err(UfsError::RoundLimitExceeded { phase: Phase::Shuffle, limit });
        }
        observer.shuffled(Phase::Shuffle, round, &ps);
        let out = RoundOutput::concat(exec.map(&ps.buckets, |b| process_bucket(b, config.election)));
        drop(ps);
        observer.checkpointed(Phase::Shuffle, round, &out.checkpoints);
        metrics.checkpointed_per_round.push(out.checkpoints.len() as u64);
        store.append(CheckpointTag::Shuffle, &out.checkpoints)?;
        live = out.emitted;
    }
    metrics.phase2_rounds = round;

    // Phase 3
    live = self_join(&store.records(CheckpointTag::Shuffle)?);
    store.clear(CheckpointTag::Shuffle);
    let limit = cap.unwrap_or_else(|| default_max_rounds(0));
    let mut round = 0;
    while !live.is_empty() {
        round += 1;
        if round > limit {
            return Err(UfsError::RoundLimitExceeded { phase: Phase::Compression, limit });
        }
        spill_if_over_budget(&mut store, config, live.len())?;
        metrics.shuffle_records_per_round.push(live.len() as u64);
        let ps = partition::shuffle_with(&exec, std::mem::take(&mut live), config.k, config.hash_seed, round);
        observer.shuffled(Phase::Compression, round, &ps);
        let out = RoundOutput::concat(exec.map(&ps.buckets, |b| compress_bucket(b, config.election)));
        drop(ps);
        observer.checkpointed(Phase::Compression, round, &out.checkpoints);
        metrics.checkpointed_per_round.push(out.checkpoints.len() as u64);
        store.append(CheckpointTag::Compression, &out.checkpoints)?;
        live = out.emitted;
    }
    metrics.phase3_rounds = round;

    let labeling = consolidate(&mut store, config.election)?;
    metrics.largest_component_size = labeling.largest_component_size() as u64;
    metrics.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok((labeling, metrics))
}

fn spill_if_over_budget(store: &mut CheckpointStore, config: &EngineConfig, live: usize) -> Result<()> {
    match config.memory_budget {
        Some(budget) if live > budget && !store.is_spilled() => store.spill(),
        _ => Ok(()),
    }
}
