//! Per-partition work for each phase. Every function here looks at one
//! partition (or one bucket) only; the driver runs them across workers.

use rustc_hash::FxHashSet;

use super::partition::{child_groups, PartitionSet};
use crate::dsu::DisjointSetForest;
use crate::types::{Edge, Election, NodeId, PairRecord};

/// Local union-find over one partition, emitted as its flattened star: one
/// `(node, root)` per node, roots announcing themselves as `(r, r)`.
pub fn weighted_union_phase(partition: &[Edge]) -> Vec<PairRecord> {
    let mut forest = DisjointSetForest::with_capacity(partition.len());
    forest.union_edges(partition);
    forest.flatten()
}

/// Local union-find that emits one record per merging edge, linking the
/// endpoint on the absorbed side to the surviving root, then `(p, p)` for
/// every root that absorbed something. Nodes that never merged (self-edges
/// only) are emitted as singletons.
pub fn weighted_union_phase_per_edge(partition: &[Edge]) -> Vec<PairRecord> {
    let mut forest = DisjointSetForest::with_capacity(partition.len());
    let mut out = Vec::new();
    let mut new_parents = Vec::new();
    let mut seen_parent = FxHashSet::default();
    for e in partition {
        if e.is_self_loop() {
            forest.insert(e.u);
            continue;
        }
        let root_u = forest.find(e.u);
        let (survivor, absorbed) = forest.union_reporting(e.u, e.v);
        if absorbed.is_none() {
            continue;
        }
        let loser_endpoint = if survivor == root_u { e.v } else { e.u };
        out.push(PairRecord { child: loser_endpoint, parent: survivor });
        if seen_parent.insert(survivor) {
            new_parents.push(survivor);
        }
    }
    out.extend(new_parents.iter().map(|&p| PairRecord { child: p, parent: p }));

    let touched: FxHashSet<NodeId> = out.iter().flat_map(|r| [r.child, r.parent]).collect();
    for n in forest.nodes() {
        if !touched.contains(&n) {
            out.push(PairRecord { child: n, parent: n });
        }
    }
    out
}

/// Initial records when the local union-find is skipped: every edge is sent
/// from the point of view of both endpoints.
pub fn initial_records_without_local_uf(partition: &[Edge]) -> Vec<PairRecord> {
    let mut out = Vec::with_capacity(partition.len() * 2);
    for e in partition {
        out.push(PairRecord { child: e.u, parent: e.v });
        if !e.is_self_loop() {
            out.push(PairRecord { child: e.v, parent: e.u });
        }
    }
    out
}

/// Output of one shuffle-phase bucket.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundOutput {
    /// Terminal records, removed from further rounds.
    pub checkpoints: Vec<PairRecord>,
    /// Records for the next shuffle.
    pub emitted: Vec<PairRecord>,
}

impl RoundOutput {
    pub(crate) fn concat(parts: Vec<RoundOutput>) -> RoundOutput {
        let (c, e) = parts.iter().fold((0, 0), |(c, e), p| (c + p.checkpoints.len(), e + p.emitted.len()));
        let mut out = RoundOutput { checkpoints: Vec::with_capacity(c), emitted: Vec::with_capacity(e) };
        for p in parts {
            out.checkpoints.extend(p.checkpoints);
            out.emitted.extend(p.emitted);
        }
        out
    }
}

/// One parent-election round over a sorted, child-grouped bucket.
///
/// Per child with distinct candidate parents `cp`:
/// - `cp == {child}`: the self-linkage leaves the live set. It is kept as a
///   checkpoint so that nodes which only ever act as parents (including
///   isolated nodes) stay visible to the compression phase.
/// - one parent other than the child: checkpoint `(child, parent)`; the child
///   is pruned.
/// - otherwise elect `np` and emit `(n, np)` for every candidate plus
///   `(child, np)`.
pub fn process_bucket(bucket: &[PairRecord], election: Election) -> RoundOutput {
    let mut out = RoundOutput::default();
    let mut cp: Vec<NodeId> = Vec::new();
    for group in child_groups(bucket) {
        let child = group[0].child;
        cp.clear();
        cp.extend(group.iter().map(|r| r.parent));
        cp.dedup();

        if cp.len() == 1 {
            out.checkpoints.push(PairRecord { child, parent: cp[0] });
            continue;
        }
        let np = election.elect(cp.iter().copied()).expect("non-empty group");
        out.emitted.extend(cp.iter().map(|&n| PairRecord { child: n, parent: np }));
        if cp.binary_search(&child).is_err() {
            out.emitted.push(PairRecord { child, parent: np });
        }
    }
    out
}

pub fn process_partition_round(groups: &PartitionSet, election: Election) -> RoundOutput {
    RoundOutput::concat(groups.buckets.iter().map(|b| process_bucket(b, election)).collect())
}

/// Symmetric expansion of checkpoints into neighbor linkages. Self-linkages
/// are emitted once.
pub fn self_join(checkpoints: &[PairRecord]) -> Vec<PairRecord> {
    let mut out = Vec::with_capacity(checkpoints.len() * 2);
    for r in checkpoints {
        out.push(*r);
        if !r.is_self_linkage() {
            out.push(r.reversed());
        }
    }
    out
}

/// One compression round over a sorted bucket of symmetric neighbor records
/// keyed by their left node.
///
/// For a group with member set `cc` (key plus all neighbors) and elected
/// `best`, the group is pruned when every record touches `best`; its members
/// are then finalized as `(n, best)`. Otherwise every member is linked to
/// `best` in both directions for the next round.
pub fn compress_bucket(bucket: &[PairRecord], election: Election) -> RoundOutput {
    let mut out = RoundOutput::default();
    let mut cc: Vec<NodeId> = Vec::new();
    for group in child_groups(bucket) {
        let key = group[0].child;
        cc.clear();
        cc.push(key);
        cc.extend(group.iter().map(|r| r.parent));
        cc.sort_unstable();
        cc.dedup();
        let best = election.elect(cc.iter().copied()).expect("non-empty group");

        let pruned = key == best || group.iter().all(|r| r.parent == best);
        if pruned {
            out.checkpoints.extend(cc.iter().map(|&n| PairRecord { child: n, parent: best }));
        } else {
            for &n in &cc {
                out.emitted.push(PairRecord { child: best, parent: n });
                if n != best {
                    out.emitted.push(PairRecord { child: n, parent: best });
                }
            }
        }
    }
    out
}

pub fn path_compression_round(groups: &PartitionSet, election: Election) -> RoundOutput {
    RoundOutput::concat(groups.buckets.iter().map(|b| compress_bucket(b, election)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::partition::shuffle_by_child;
    use std::collections::BTreeSet;

    fn set(records: &[PairRecord]) -> BTreeSet<(u64, u64)> {
        records.iter().map(|r| (r.child.0, r.parent.0)).collect()
    }

    fn recs(pairs: &[(u64, u64)]) -> Vec<PairRecord> {
        pairs.iter().copied().map(PairRecord::from).collect()
    }

    fn edges(pairs: &[(u64, u64)]) -> Vec<Edge> {
        pairs.iter().copied().map(Edge::from).collect()
    }

    fn sorted(pairs: &[(u64, u64)]) -> Vec<PairRecord> {
        let mut r = recs(pairs);
        r.sort_unstable();
        r
    }

    #[test]
    fn weighted_union_examples() {
        let out = weighted_union_phase(&edges(&[(4, 2), (2, 7), (9, 9)]));
        assert_eq!(set(&out), BTreeSet::from([(2, 2), (4, 2), (7, 2), (9, 9)]));
        assert!(weighted_union_phase(&[]).is_empty());
        let out = weighted_union_phase(&edges(&[(1, 2), (3, 4), (2, 3)]));
        assert_eq!(set(&out), BTreeSet::from([(1, 1), (2, 1), (3, 1), (4, 1)]));
        assert_eq!(out.len(), 4);
    }

    #[test]
    fn per_edge_emission_links_absorbed_endpoint() {
        // (4,2): tie -> root 2, absorbed endpoint 4. (2,7): root 2 size 2 absorbs 7.
        let out = weighted_union_phase_per_edge(&edges(&[(4, 2), (2, 7), (9, 9)]));
        assert_eq!(set(&out), BTreeSet::from([(4, 2), (7, 2), (2, 2), (9, 9)]));
        assert!(weighted_union_phase_per_edge(&[]).is_empty());
    }

    #[test]
    fn without_local_uf_examples() {
        assert_eq!(initial_records_without_local_uf(&edges(&[(1, 2)])), recs(&[(1, 2), (2, 1)]));
        assert_eq!(initial_records_without_local_uf(&edges(&[(5, 5)])), recs(&[(5, 5)]));
        assert_eq!(
            initial_records_without_local_uf(&edges(&[(1, 2), (2, 3)])),
            recs(&[(1, 2), (2, 1), (2, 3), (3, 2)])
        );
    }

    #[test]
    fn election_with_two_parents() {
        let out = process_bucket(&sorted(&[(5, 3), (5, 7)]), Election::Min);
        assert!(out.checkpoints.is_empty());
        assert_eq!(set(&out.emitted), BTreeSet::from([(3, 3), (7, 3), (5, 3)]));
        assert_eq!(out.emitted.len(), 3);
    }

    #[test]
    fn unique_parent_is_checkpointed() {
        let out = process_bucket(&sorted(&[(5, 9)]), Election::Min);
        assert_eq!(out.checkpoints, recs(&[(5, 9)]));
        assert!(out.emitted.is_empty());
        // duplicates collapse before the uniqueness test
        let out = process_bucket(&sorted(&[(5, 9), (5, 9)]), Election::Min);
        assert_eq!(out.checkpoints, recs(&[(5, 9)]));
    }

    #[test]
    fn self_linkage_leaves_live_set() {
        let out = process_bucket(&sorted(&[(9, 9)]), Election::Min);
        assert!(out.emitted.is_empty());
        assert_eq!(out.checkpoints, recs(&[(9, 9)]));
    }

    #[test]
    fn child_among_candidates_not_duplicated() {
        let out = process_bucket(&sorted(&[(5, 5), (5, 8)]), Election::Min);
        assert_eq!(out.emitted, recs(&[(5, 5), (8, 5)]));
        let out = process_bucket(&sorted(&[(5, 3), (5, 8)]), Election::Max);
        assert_eq!(set(&out.emitted), BTreeSet::from([(3, 8), (8, 8), (5, 8)]));
    }

    #[test]
    fn self_join_examples() {
        assert_eq!(set(&self_join(&recs(&[(2, 1)]))), BTreeSet::from([(2, 1), (1, 2)]));
        assert_eq!(self_join(&recs(&[(1, 1)])), recs(&[(1, 1)]));
        assert_eq!(
            set(&self_join(&recs(&[(2, 1), (3, 2)]))),
            BTreeSet::from([(2, 1), (1, 2), (3, 2), (2, 3)])
        );
    }

    #[test]
    fn compression_not_pruned() {
        let out = compress_bucket(&sorted(&[(2, 1), (2, 3)]), Election::Min);
        assert!(out.checkpoints.is_empty());
        assert_eq!(out.emitted, recs(&[(1, 1), (1, 2), (2, 1), (1, 3), (3, 1)]));
    }

    #[test]
    fn compression_pruned_examples() {
        let out = compress_bucket(&sorted(&[(3, 1)]), Election::Min);
        assert!(out.emitted.is_empty());
        assert_eq!(set(&out.checkpoints), BTreeSet::from([(3, 1), (1, 1)]));

        let out = compress_bucket(&sorted(&[(1, 2)]), Election::Min);
        assert_eq!(set(&out.checkpoints), BTreeSet::from([(2, 1), (1, 1)]));
    }

    #[test]
    fn compression_key_self_loop_blocks_pruning() {
        // (3,3) has both endpoints above the minimum 1
        let out = compress_bucket(&sorted(&[(3, 1), (3, 3)]), Election::Min);
        assert!(out.checkpoints.is_empty());
        assert_eq!(set(&out.emitted), BTreeSet::from([(1, 1), (1, 3), (3, 1)]));
    }

    #[test]
    fn rounds_over_partition_sets() {
        let ps = shuffle_by_child(recs(&[(5, 3), (5, 7), (6, 1), (9, 9)]), 4, 11);
        let out = process_partition_round(&ps, Election::Min);
        assert_eq!(set(&out.checkpoints), BTreeSet::from([(6, 1), (9, 9)]));
        assert_eq!(set(&out.emitted), BTreeSet::from([(3, 3), (7, 3), (5, 3)]));

        let ps = shuffle_by_child(recs(&[(2, 1), (2, 3), (3, 2), (1, 2)]), 3, 11);
        let out = path_compression_round(&ps, Election::Min);
        assert!(!out.emitted.is_empty());
    }
}
