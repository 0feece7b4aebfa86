use super::checkpoint::{CheckpointStore, CheckpointTag};
use crate::error::{Result, UfsError};
use crate::labeling::ComponentLabeling;
use crate::types::{Election, NodeId, PairRecord};

/// Turns the compression-phase checkpoints into a star labeling.
pub fn consolidate(store: &mut CheckpointStore, election: Election) -> Result<ComponentLabeling> {
    consolidate_records(store.records(CheckpointTag::Compression)?, election)
}

/// Keeps the elected parent per child, then pointer-jumps to a fixpoint.
///
/// Parents never seen as children become roots. A node that ends up as a
/// root without having been its own parent sat on a cycle; so does any
/// input that needs more than `floor(log2 n) + 2` sweeps.
pub fn consolidate_records(mut records: Vec<PairRecord>, election: Election) -> Result<ComponentLabeling> {
    records.sort_unstable();
    records.dedup();

    let mut nodes: Vec<NodeId> = records.iter().flat_map(|r| [r.child, r.parent]).collect();
    nodes.sort_unstable();
    nodes.dedup();
    let index = |x: NodeId| nodes.binary_search(&x).expect("node collected above");

    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    for group in records.chunk_by(|a, b| a.child == b.child) {
        let child = group[0].child;
        let best = election.elect(group.iter().map(|r| r.parent)).expect("non-empty group");
        parent[index(child)] = index(best);
    }
    drop(records);

    let limit = if nodes.len() < 2 { 2 } else { nodes.len().ilog2() as usize + 2 };
    let mut label = parent.clone();
    let mut next = vec![0usize; label.len()];
    let mut sweeps = 0;
    loop {
        sweeps += 1;
        if sweeps > limit {
            return Err(UfsError::CycleDetected { sweeps: limit });
        }
        let mut changed = false;
        for i in 0..label.len() {
            next[i] = label[label[i]];
            changed |= next[i] != label[i];
        }
        std::mem::swap(&mut label, &mut next);
        if !changed {
            break;
        }
    }
    if (0..label.len()).any(|i| label[i] == i && parent[i] != i) {
        return Err(UfsError::CycleDetected { sweeps });
    }

    Ok(ComponentLabeling::from_sorted(nodes.iter().zip(&label).map(|(&n, &l)| (n, nodes[l])).collect()))
}
