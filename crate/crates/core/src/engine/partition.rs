//! Input splitting and the shuffle boundary between rounds.

use super::exec::Executor;
use crate::types::{Edge, NodeId, PairRecord};

/// Seed used by the shuffle hash unless a config overrides it.
pub const DEFAULT_HASH_SEED: u64 = 0x5eed_0fc0_ffee_u64;

/// Splits `edges` into `k` contiguous chunks whose sizes differ by at most one.
/// The first `len % k` chunks carry the extra edge.
pub fn load_partitions(edges: &[Edge], k: usize) -> Vec<&[Edge]> {
    assert!(k >= 1, "partition count must be at least 1");
    let base = edges.len() / k;
    let extra = edges.len() % k;
    let mut chunks = Vec::with_capacity(k);
    let mut start = 0;
    for i in 0..k {
        let len = base + usize::from(i < extra);
        chunks.push(&edges[start..start + len]);
        start += len;
    }
    chunks
}

/// Bucket for a child id: seeded multiplicative hash, folded, mod `k`.
#[inline]
pub fn bucket_of(child: NodeId, k: usize, seed: u64) -> usize {
    let mut h = (child.0 ^ seed).wrapping_mul(0x9e37_79b9_7f4a_7c15);
    h ^= h >> 32;
    (h % k as u64) as usize
}

/// Records redistributed across `k` buckets by child. Each bucket is sorted
/// by `(child, parent)`, so records sharing a child are contiguous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSet {
    pub k: usize,
    pub buckets: Vec<Vec<PairRecord>>,
    pub round_index: usize,
}

impl PartitionSet {
    pub fn record_count(&self) -> usize {
        self.buckets.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.buckets.iter().all(Vec::is_empty)
    }

    /// Every child group across all buckets, bucket by bucket.
    pub fn groups(&self) -> impl Iterator<Item = &[PairRecord]> {
        self.buckets.iter().flat_map(|b| child_groups(b))
    }

    /// Number of distinct children.
    pub fn distinct_children(&self) -> usize {
        self.groups().count()
    }

    /// Largest number of distinct parents any child has in this set.
    pub fn max_candidate_parents(&self) -> usize {
        self.groups().map(distinct_parent_count).max().unwrap_or(0)
    }
}

/// Contiguous runs of records sharing a child. Input must be grouped.
pub fn child_groups(bucket: &[PairRecord]) -> impl Iterator<Item = &[PairRecord]> {
    bucket.chunk_by(|a, b| a.child == b.child)
}

fn distinct_parent_count(group: &[PairRecord]) -> usize {
    group.chunk_by(|a, b| a.parent == b.parent).count()
}

/// Places every record in bucket `hash(child) mod k` and groups each bucket.
pub fn shuffle_by_child(records: Vec<PairRecord>, k: usize, hash_seed: u64) -> PartitionSet {
    shuffle_with(&Executor::sequential(), records, k, hash_seed, 0)
}

pub(crate) fn shuffle_with(
    exec: &Executor,
    records: Vec<PairRecord>,
    k: usize,
    hash_seed: u64,
    round_index: usize,
) -> PartitionSet {
    assert!(k >= 1, "partition count must be at least 1");
    let mut buckets: Vec<Vec<PairRecord>> = if k == 1 {
        vec![records]
    } else {
        let targets: Vec<u32> = records.iter().map(|r| bucket_of(r.child, k, hash_seed) as u32).collect();
        let mut counts = vec![0usize; k];
        for &t in &targets {
            counts[t as usize] += 1;
        }
        let mut buckets: Vec<Vec<PairRecord>> = counts.iter().map(|&c| Vec::with_capacity(c)).collect();
        for (r, t) in records.into_iter().zip(targets) {
            buckets[t as usize].push(r);
        }
        buckets
    };
    exec.for_each_mut(&mut buckets, |b| b.sort_unstable());
    PartitionSet { k, buckets, round_index }
}
