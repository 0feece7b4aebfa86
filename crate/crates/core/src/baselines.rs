//! Alternating Large-star / Small-star connected components, used as the
//! comparison yardstick in benchmarks.
//!
//! State is a symmetric neighbor relation. For a node `u` with neighborhood
//! `Γ(u)` and `m(u) = min(Γ(u) ∪ {u})`:
//!
//! - large-star links every neighbor `v > u` to `m(u)`;
//! - small-star links every neighbor `v <= u`, and `u` itself, to `m(u)`.
//!
//! Each step is one shuffle round. Nodes with no neighbor other than
//! themselves are kept as `(u, u)`. At the fixpoint every component is a star
//! around its minimum.

use crate::dsu;
use crate::engine::{default_max_rounds, Phase, RunMetrics};
use crate::error::{Result, UfsError};
use crate::labeling::ComponentLabeling;
use crate::types::{Edge, NodeId, PairRecord};

pub use dsu::sequential_components;

/// Symmetric, sorted, deduplicated neighbor records.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StarRoundState {
    pub records: Vec<PairRecord>,
    pub changed: bool,
}

impl StarRoundState {
    pub fn from_edges(edges: &[Edge]) -> Self {
        let links = edges.iter().map(|e| PairRecord { child: e.u, parent: e.v });
        StarRoundState { records: symmetric_closure(links), changed: false }
    }

    /// Label of each node: the minimum of its closed neighborhood.
    pub fn labeling(&self) -> ComponentLabeling {
        let entries = self
            .records
            .chunk_by(|a, b| a.child == b.child)
            .map(|g| {
                let u = g[0].child;
                (u, g.iter().map(|r| r.parent).fold(u, NodeId::min))
            })
            .collect();
        ComponentLabeling::from_sorted(entries)
    }
}

/// Both directions of every link, self-loops dropped except for nodes that
/// would otherwise vanish.
fn symmetric_closure<I: IntoIterator<Item = PairRecord>>(links: I) -> Vec<PairRecord> {
    let mut out = Vec::new();
    for r in links {
        out.push(r);
        if !r.is_self_linkage() {
            out.push(r.reversed());
        }
    }
    out.sort_unstable();
    out.dedup();
    // keep (u, u) only when u has no other neighbor
    let mut kept = Vec::with_capacity(out.len());
    for g in out.chunk_by(|a, b| a.child == b.child) {
        if g.len() == 1 {
            kept.push(g[0]);
        } else {
            kept.extend(g.iter().filter(|r| !r.is_self_linkage()));
        }
    }
    kept
}

fn star_step(state: &StarRoundState, large: bool) -> StarRoundState {
    let mut links = Vec::with_capacity(state.records.len());
    for g in state.records.chunk_by(|a, b| a.child == b.child) {
        let u = g[0].child;
        let m = g.iter().map(|r| r.parent).fold(u, NodeId::min);
        let mut linked_any = false;
        for r in g {
            let v = r.parent;
            if v == u {
                continue;
            }
            if large == (v > u) {
                links.push(PairRecord { child: v, parent: m });
                linked_any = true;
            }
        }
        if !large {
            links.push(PairRecord { child: u, parent: m });
        } else if !linked_any && g.iter().all(|r| r.parent == u) {
            links.push(PairRecord { child: u, parent: u });
        }
    }
    let records = symmetric_closure(links);
    let changed = records != state.records;
    StarRoundState { records, changed }
}

pub fn large_star(state: &StarRoundState) -> StarRoundState {
    star_step(state, true)
}

pub fn small_star(state: &StarRoundState) -> StarRoundState {
    star_step(state, false)
}

/// Alternates large-star and small-star until a full pass changes nothing.
/// `max_rounds` caps individual star steps; `None` uses the engine default.
pub fn run_alternating(edges: &[Edge], max_rounds: Option<usize>) -> Result<(ComponentLabeling, RunMetrics)> {
    let started = std::time::Instant::now();
    let mut metrics = RunMetrics { input_edges: edges.len() as u64, ..Default::default() };
    let mut state = StarRoundState::from_edges(edges);
    metrics.initial_shuffle_volume = state.records.len() as u64;
    let limit = max_rounds.unwrap_or_else(|| default_max_rounds(state.labeling().len()));

    let mut rounds = 0;
    while !state.records.is_empty() {
        let mut pass_changed = false;
        for large in [true, false] {
            rounds += 1;
            if rounds > limit {
                return Err(UfsError::RoundLimitExceeded { phase: Phase::Shuffle, limit });
            }
            metrics.shuffle_records_per_round.push(state.records.len() as u64);
            metrics.checkpointed_per_round.push(0);
            state = star_step(&state, large);
            pass_changed |= state.changed;
        }
        if !pass_changed {
            break;
        }
    }
    metrics.phase2_rounds = rounds;
    let labeling = state.labeling();
    metrics.largest_component_size = labeling.largest_component_size() as u64;
    metrics.wall_time_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok((labeling, metrics))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn state(pairs: &[(u64, u64)]) -> StarRoundState {
        StarRoundState::from_edges(&pairs.iter().copied().map(Edge::from).collect::<Vec<_>>())
    }

    fn set(s: &StarRoundState) -> BTreeSet<(u64, u64)> {
        s.records.iter().map(|r| (r.child.0, r.parent.0)).collect()
    }

    #[test]
    fn large_star_fixpoint_on_min_star() {
        let s = state(&[(1, 2), (1, 3), (1, 4)]);
        let out = large_star(&s);
        assert_eq!(out.records, s.records);
        assert!(!out.changed);
    }

    #[test]
    fn large_star_relinks_path() {
        let out = large_star(&state(&[(1, 2), (2, 3)]));
        assert!(set(&out).contains(&(3, 1)));
        assert!(out.changed);
    }

    #[test]
    fn empty_states() {
        let empty = StarRoundState::default();
        assert_eq!(large_star(&empty), empty);
        assert_eq!(small_star(&empty), empty);
    }

    #[test]
    fn small_star_examples() {
        let single = state(&[(5, 5)]);
        let out = small_star(&single);
        assert_eq!(set(&out), BTreeSet::from([(5, 5)]));
        assert!(!out.changed);
        assert_eq!(large_star(&single).records, single.records);

        let pair = state(&[(2, 1)]);
        let out = small_star(&pair);
        assert_eq!(set(&out), BTreeSet::from([(1, 2), (2, 1)]));
        assert!(!out.changed);
        assert_eq!(out.labeling().get(NodeId(2)), Some(NodeId(1)));
    }

    #[test]
    fn alternating_examples() {
        let e: Vec<Edge> = [(1, 2), (2, 3), (4, 5)].map(Edge::from).to_vec();
        let (l, m) = run_alternating(&e, None).unwrap();
        let got: Vec<_> = l.iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(got, vec![(1, 1), (2, 1), (3, 1), (4, 4), (5, 4)]);
        assert_eq!(m.shuffle_records_per_round.len(), m.phase2_rounds);

        let (l, m) = run_alternating(&[], None).unwrap();
        assert!(l.is_empty());
        assert_eq!(m.phase2_rounds, 0);

        let chain: Vec<Edge> = (0..1023).map(|i| Edge::new(i, i + 1)).collect();
        let (l, m) = run_alternating(&chain, None).unwrap();
        assert!(l.iter().all(|(_, r)| r == NodeId(0)));
        assert!(m.phase2_rounds >= 2);
    }

    proptest! {
        #[test]
        fn each_step_preserves_components(pairs in prop::collection::vec((0u64..40, 0u64..40), 0..80)) {
            let edges: Vec<Edge> = pairs.iter().copied().map(Edge::from).collect();
            let truth = sequential_components(&edges);
            let mut s = StarRoundState::from_edges(&edges);
            for step in 0..12 {
                s = star_step(&s, step % 2 == 0);
                let as_edges: Vec<Edge> = s.records.iter().map(|r| Edge { u: r.child, v: r.parent }).collect();
                prop_assert!(sequential_components(&as_edges).same_partition(&truth));
            }
            let (l, _) = run_alternating(&edges, None).unwrap();
            prop_assert_eq!(l, truth);
        }
    }
}
