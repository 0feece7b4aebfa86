//! Weighted quick-union with path compression.
//!
//! The forest runs inside every logical partition during the local phase and
//! over the whole input as the reference labeling. Nodes register on first
//! touch. Storage is a flat array when the caller knows ids are dense (after
//! dictionary encoding) and a hash-indexed slot table otherwise; both expose
//! the same behavior.
//!
//! Union is by tree size. On equal sizes the smaller id survives, which keeps
//! results deterministic and biases roots toward the ids a min-election would
//! pick anyway.

use rustc_hash::FxHashMap;

use crate::labeling::ComponentLabeling;
use crate::types::{Edge, NodeId, PairRecord};

const UNREGISTERED: u32 = u32::MAX;

#[derive(Clone, Debug)]
enum Slots {
    /// Slot index == node id.
    Dense { registered: usize },
    /// Slots handed out in first-touch order.
    Sparse { index: FxHashMap<u64, u32>, ids: Vec<u64> },
}

#[derive(Clone, Debug)]
pub struct DisjointSetForest {
    slots: Slots,
    parent: Vec<u32>,
    /// Tree size, meaningful only at roots.
    size: Vec<u32>,
}

impl Default for DisjointSetForest {
    fn default() -> Self {
        Self::new()
    }
}

impl DisjointSetForest {
    /// Hash-indexed forest for arbitrary 64-bit ids.
    pub fn new() -> Self {
        Self::with_capacity(0)
    }

    pub fn with_capacity(nodes: usize) -> Self {
        DisjointSetForest {
            slots: Slots::Sparse {
                index: FxHashMap::with_capacity_and_hasher(nodes, Default::default()),
                ids: Vec::with_capacity(nodes),
            },
            parent: Vec::with_capacity(nodes),
            size: Vec::with_capacity(nodes),
        }
    }

    /// Array-backed forest for ids in `0..universe`. Touching an id outside
    /// that range panics.
    pub fn dense(universe: usize) -> Self {
        assert!(universe < UNREGISTERED as usize, "dense universe too large");
        DisjointSetForest {
            slots: Slots::Dense { registered: 0 },
            parent: vec![UNREGISTERED; universe],
            size: vec![0; universe],
        }
    }

    /// Picks dense storage when the largest id is small relative to the
    /// number of edges, sparse otherwise.
    pub fn for_edges(edges: &[Edge]) -> Self {
        let max_id = edges.iter().map(|e| e.u.0.max(e.v.0)).max();
        match max_id {
            Some(m) if m < (UNREGISTERED as u64) && m <= 4 * edges.len() as u64 + 1024 => {
                Self::dense(m as usize + 1)
            }
            _ => Self::with_capacity(edges.len()),
        }
    }

    pub fn len(&self) -> usize {
        match &self.slots {
            Slots::Dense { registered } => *registered,
            Slots::Sparse { ids, .. } => ids.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, x: NodeId) -> bool {
        self.lookup(x).is_some()
    }

    fn lookup(&self, x: NodeId) -> Option<u32> {
        match &self.slots {
            Slots::Dense { .. } => {
                let i = x.0 as usize;
                (i < self.parent.len() && self.parent[i] != UNREGISTERED).then_some(i as u32)
            }
            Slots::Sparse { index, .. } => index.get(&x.0).copied(),
        }
    }

    fn node_at(&self, slot: u32) -> NodeId {
        match &self.slots {
            Slots::Dense { .. } => NodeId(slot as u64),
            Slots::Sparse { ids, .. } => NodeId(ids[slot as usize]),
        }
    }

    fn slot_or_register(&mut self, x: NodeId) -> u32 {
        match &mut self.slots {
            Slots::Dense { registered } => {
                let i = x.0 as usize;
                assert!(i < self.parent.len(), "node {x} outside dense universe");
                if self.parent[i] == UNREGISTERED {
                    self.parent[i] = i as u32;
                    self.size[i] = 1;
                    *registered += 1;
                }
                i as u32
            }
            Slots::Sparse { index, ids } => {
                let next = ids.len() as u32;
                let slot = *index.entry(x.0).or_insert(next);
                if slot == next {
                    assert!(next < UNREGISTERED, "too many nodes for one forest");
                    ids.push(x.0);
                    self.parent.push(next);
                    self.size.push(1);
                }
                slot
            }
        }
    }

    fn root_slot(&mut self, slot: u32) -> u32 {
        let mut root = slot;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = slot;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Root of `x`, pointing every node on the traversed path directly at it.
    /// Unknown nodes register as singleton roots.
    pub fn find(&mut self, x: NodeId) -> NodeId {
        let slot = self.slot_or_register(x);
        let root = self.root_slot(slot);
        self.node_at(root)
    }

    /// Registers `x` without linking it to anything.
    pub fn insert(&mut self, x: NodeId) {
        self.slot_or_register(x);
    }

    /// Merges the trees of `u` and `v` and returns the surviving root: the
    /// larger tree's root, or the smaller id on equal sizes.
    pub fn union(&mut self, u: NodeId, v: NodeId) -> NodeId {
        let su = self.slot_or_register(u);
        let sv = self.slot_or_register(v);
        let ru = self.root_slot(su);
        let rv = self.root_slot(sv);
        if ru == rv {
            return self.node_at(ru);
        }
        let (big, small) = self.order_roots(ru, rv);
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        self.node_at(big)
    }

    /// Like [`union`](Self::union) but also reports which root was attached
    /// under the survivor, or `None` when both already shared a root.
    pub(crate) fn union_reporting(&mut self, u: NodeId, v: NodeId) -> (NodeId, Option<NodeId>) {
        let su = self.slot_or_register(u);
        let sv = self.slot_or_register(v);
        let ru = self.root_slot(su);
        let rv = self.root_slot(sv);
        if ru == rv {
            return (self.node_at(ru), None);
        }
        let (big, small) = self.order_roots(ru, rv);
        self.parent[small as usize] = big;
        self.size[big as usize] += self.size[small as usize];
        (self.node_at(big), Some(self.node_at(small)))
    }

    fn order_roots(&self, a: u32, b: u32) -> (u32, u32) {
        let (size_a, size_b) = (self.size[a as usize], self.size[b as usize]);
        let a_wins = size_a > size_b || (size_a == size_b && self.node_at(a) < self.node_at(b));
        if a_wins {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Size of the tree containing `x`; 0 for unknown nodes.
    pub fn tree_size(&mut self, x: NodeId) -> usize {
        match self.lookup(x) {
            Some(slot) => {
                let r = self.root_slot(slot);
                self.size[r as usize] as usize
            }
            None => 0,
        }
    }

    /// Stored parent of `x` without compressing anything.
    pub fn parent_of(&self, x: NodeId) -> Option<NodeId> {
        self.lookup(x).map(|s| self.node_at(self.parent[s as usize]))
    }

    /// Parent hops from `x` to its root, without compressing.
    pub fn depth(&self, x: NodeId) -> Option<usize> {
        let mut slot = self.lookup(x)?;
        let mut hops = 0;
        while self.parent[slot as usize] != slot {
            slot = self.parent[slot as usize];
            hops += 1;
        }
        Some(hops)
    }

    /// Registered nodes, in id order for dense storage and first-touch order otherwise.
    pub fn nodes(&self) -> Vec<NodeId> {
        match &self.slots {
            Slots::Dense { .. } => (0..self.parent.len())
                .filter(|&i| self.parent[i] != UNREGISTERED)
                .map(|i| NodeId(i as u64))
                .collect(),
            Slots::Sparse { ids, .. } => ids.iter().map(|&i| NodeId(i)).collect(),
        }
    }

    /// One `(node, root)` record per registered node, roots included as
    /// `(r, r)`. Afterwards every node points directly at its root.
    pub fn flatten(&mut self) -> Vec<PairRecord> {
        let slots: Vec<u32> = match &self.slots {
            Slots::Dense { .. } => (0..self.parent.len() as u32)
                .filter(|&i| self.parent[i as usize] != UNREGISTERED)
                .collect(),
            Slots::Sparse { ids, .. } => (0..ids.len() as u32).collect(),
        };
        slots
            .into_iter()
            .map(|s| {
                let r = self.root_slot(s);
                PairRecord { child: self.node_at(s), parent: self.node_at(r) }
            })
            .collect()
    }

    pub fn union_edges<'a, I: IntoIterator<Item = &'a Edge>>(&mut self, edges: I) {
        for e in edges {
            if e.is_self_loop() {
                self.insert(e.u);
            } else {
                self.union(e.u, e.v);
            }
        }
    }
}

/// Labels every node in `edges` with the minimum id of its connected component.
pub fn sequential_components(edges: &[Edge]) -> ComponentLabeling {
    let mut forest = DisjointSetForest::for_edges(edges);
    forest.union_edges(edges);
    let records = forest.flatten();

    let mut min_of_root: FxHashMap<NodeId, NodeId> = FxHashMap::default();
    for r in &records {
        let m = min_of_root.entry(r.parent).or_insert(r.child);
        if r.child < *m {
            *m = r.child;
        }
    }
    let mut entries: Vec<(NodeId, NodeId)> =
        records.iter().map(|r| (r.child, min_of_root[&r.parent])).collect();
    entries.sort_unstable();
    ComponentLabeling::from_sorted(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::{BTreeMap, BTreeSet, VecDeque};

    fn n(x: u64) -> NodeId {
        NodeId(x)
    }

    fn rec_set(records: Vec<PairRecord>) -> BTreeSet<(u64, u64)> {
        records.into_iter().map(|r| (r.child.0, r.parent.0)).collect()
    }

    /// BFS labeling by component minimum, independent of the forest.
    fn bfs_components(nodes: &BTreeSet<u64>, edges: &[(u64, u64)]) -> BTreeMap<u64, u64> {
        let mut adj: BTreeMap<u64, Vec<u64>> = nodes.iter().map(|&x| (x, Vec::new())).collect();
        for &(a, b) in edges {
            adj.get_mut(&a).unwrap().push(b);
            adj.get_mut(&b).unwrap().push(a);
        }
        let mut label = BTreeMap::new();
        for &start in nodes {
            if label.contains_key(&start) {
                continue;
            }
            // nodes iterate ascending, so `start` is the component minimum
            let mut queue = VecDeque::from([start]);
            label.insert(start, start);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[&x] {
                    if let std::collections::btree_map::Entry::Vacant(slot) = label.entry(y) {
                        slot.insert(start);
                        queue.push_back(y);
                    }
                }
            }
        }
        label
    }

    #[test]
    fn find_registers_unknown_node() {
        let mut f = DisjointSetForest::new();
        assert_eq!(f.find(n(7)), n(7));
        assert_eq!(f.parent_of(n(7)), Some(n(7)));
        assert_eq!(f.tree_size(n(7)), 1);
    }

    #[test]
    fn find_compresses_chain() {
        let mut f = DisjointSetForest::new();
        f.insert(n(1));
        f.insert(n(2));
        f.insert(n(3));
        // hand-build 3 -> 2 -> 1
        let (s1, s2, s3) = (f.lookup(n(1)).unwrap(), f.lookup(n(2)).unwrap(), f.lookup(n(3)).unwrap());
        f.parent[s3 as usize] = s2;
        f.parent[s2 as usize] = s1;
        f.size[s1 as usize] = 3;
        assert_eq!(f.depth(n(3)), Some(2));
        assert_eq!(f.find(n(3)), n(1));
        assert_eq!(f.parent_of(n(3)), Some(n(1)));
        assert_eq!(f.depth(n(3)), Some(1));
    }

    #[test]
    fn find_on_depth_one_is_unchanged() {
        let mut f = DisjointSetForest::new();
        f.union(n(4), n(2));
        f.union(n(2), n(7));
        assert_eq!(f.find(n(4)), n(2));
        assert_eq!(f.parent_of(n(4)), Some(n(2)));
        assert_eq!(f.parent_of(n(7)), Some(n(2)));
    }

    #[test]
    fn union_tie_breaks_to_smaller_id() {
        let mut f = DisjointSetForest::new();
        assert_eq!(f.union(n(4), n(2)), n(2));
        assert_eq!(f.tree_size(n(4)), 2);
    }

    #[test]
    fn union_same_component_is_noop() {
        let mut f = DisjointSetForest::new();
        f.union(n(4), n(2));
        assert_eq!(f.union(n(2), n(4)), n(2));
        assert_eq!(f.tree_size(n(2)), 2);
    }

    #[test]
    fn union_larger_tree_survives() {
        let mut f = DisjointSetForest::new();
        f.union(n(4), n(2));
        assert_eq!(f.union(n(2), n(7)), n(2));
        assert_eq!(f.tree_size(n(7)), 3);
        // larger tree wins even with a bigger id
        let mut g = DisjointSetForest::new();
        g.union(n(8), n(9));
        assert_eq!(g.union(n(1), n(9)), n(8));
    }

    #[test]
    fn flatten_examples() {
        let mut f = DisjointSetForest::new();
        f.union_edges(&[Edge::new(4, 2), Edge::new(2, 7)]);
        assert_eq!(rec_set(f.flatten()), BTreeSet::from([(2, 2), (4, 2), (7, 2)]));

        assert!(DisjointSetForest::new().flatten().is_empty());

        let mut s = DisjointSetForest::new();
        s.union_edges(&[Edge::new(9, 9)]);
        assert_eq!(rec_set(s.flatten()), BTreeSet::from([(9, 9)]));
    }

    #[test]
    fn flatten_leaves_every_node_at_depth_one() {
        let mut f = DisjointSetForest::dense(64);
        let edges: Vec<Edge> = (0..63).map(|i| Edge::new(i, i + 1)).collect();
        f.union_edges(&edges);
        f.flatten();
        for i in 0..64 {
            assert!(f.depth(n(i)).unwrap() <= 1);
        }
    }

    #[test]
    fn sequential_components_examples() {
        let lab = sequential_components(&[Edge::new(1, 2), Edge::new(2, 3), Edge::new(4, 5)]);
        let got: Vec<_> = lab.iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(got, vec![(1, 1), (2, 1), (3, 1), (4, 4), (5, 4)]);
        assert!(sequential_components(&[]).is_empty());
        let single = sequential_components(&[Edge::new(8, 8)]);
        assert_eq!(single.get(n(8)), Some(n(8)));
    }

    #[test]
    fn dense_and_sparse_agree() {
        let edges: Vec<Edge> = [(0, 5), (5, 9), (3, 3), (2, 7), (7, 0)].map(Edge::from).to_vec();
        let mut d = DisjointSetForest::dense(10);
        let mut s = DisjointSetForest::new();
        d.union_edges(&edges);
        s.union_edges(&edges);
        assert_eq!(rec_set(d.flatten()), rec_set(s.flatten()));
    }

    fn edge_list() -> impl Strategy<Value = Vec<(u64, u64)>> {
        prop::collection::vec((0u64..200, 0u64..200), 0..300)
    }

    proptest! {
        #[test]
        fn partition_matches_bfs(edges in edge_list()) {
            let mut f = DisjointSetForest::new();
            let typed: Vec<Edge> = edges.iter().copied().map(Edge::from).collect();
            f.union_edges(&typed);

            let nodes: BTreeSet<u64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            let truth = bfs_components(&nodes, &edges);
            for &x in &nodes {
                for &y in &nodes {
                    prop_assert_eq!(f.find(n(x)) == f.find(n(y)), truth[&x] == truth[&y]);
                }
            }

            let lab = sequential_components(&typed);
            for (x, l) in lab.iter() {
                prop_assert_eq!(l.0, truth[&x.0]);
                prop_assert!(l <= x);
                prop_assert_eq!(lab.get(l), Some(l));
            }
        }

        #[test]
        fn depth_bounded_by_log_tree_size(edges in edge_list()) {
            let mut f = DisjointSetForest::new();
            for &(a, b) in &edges {
                f.union(n(a), n(b));
                if a % 7 == 0 {
                    f.find(n(b));
                }
            }
            for x in f.nodes() {
                let depth = f.depth(x).unwrap();
                let size = f.clone().tree_size(x);
                prop_assert!(depth <= (size as f64).log2().floor() as usize + 1);
            }
        }

        #[test]
        fn find_is_idempotent_and_sizes_are_consistent(edges in edge_list()) {
            let mut f = DisjointSetForest::new();
            for &(a, b) in &edges {
                f.union(n(a), n(b));
            }
            let mut counts: BTreeMap<NodeId, usize> = BTreeMap::new();
            for x in f.nodes() {
                let r = f.find(x);
                prop_assert_eq!(f.find(r), r);
                *counts.entry(r).or_default() += 1;
            }
            for (r, c) in counts {
                prop_assert_eq!(f.tree_size(r), c);
            }
        }
    }
}
