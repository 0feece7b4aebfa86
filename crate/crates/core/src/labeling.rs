use rustc_hash::FxHashMap;

use crate::types::NodeId;

/// Node → component root mapping, stored sorted by node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComponentLabeling {
    entries: Vec<(NodeId, NodeId)>,
}

impl ComponentLabeling {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a labeling from arbitrary-order pairs. Panics if a node is
    /// labeled twice with different roots.
    pub fn from_pairs<I: IntoIterator<Item = (NodeId, NodeId)>>(pairs: I) -> Self {
        let mut entries: Vec<_> = pairs.into_iter().collect();
        entries.sort_unstable();
        entries.dedup();
        for w in entries.windows(2) {
            assert!(w[0].0 != w[1].0, "node {} labeled twice", w[0].0);
        }
        ComponentLabeling { entries }
    }

    /// `entries` must be sorted by node with unique nodes.
    pub(crate) fn from_sorted(entries: Vec<(NodeId, NodeId)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        ComponentLabeling { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, node: NodeId) -> Option<NodeId> {
        self.entries
            .binary_search_by_key(&node, |&(n, _)| n)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (NodeId, NodeId)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.entries.iter().map(|&(n, _)| n)
    }

    /// `label(label(x)) == label(x)` for every node.
    pub fn is_star(&self) -> bool {
        self.entries.iter().all(|&(_, root)| self.get(root) == Some(root))
    }

    /// Sizes of all components, keyed by root.
    pub fn component_sizes(&self) -> FxHashMap<NodeId, usize> {
        let mut sizes = FxHashMap::default();
        for &(_, root) in &self.entries {
            *sizes.entry(root).or_insert(0) += 1;
        }
        sizes
    }

    pub fn component_count(&self) -> usize {
        self.component_sizes().len()
    }

    pub fn largest_component_size(&self) -> usize {
        self.component_sizes().into_values().max().unwrap_or(0)
    }

    /// Component sizes in descending order; independent of which node roots each component.
    pub fn size_histogram(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.component_sizes().into_values().collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// True when both labelings cover the same nodes and induce the same
    /// partition, regardless of which node is used as each component's root.
    pub fn same_partition(&self, other: &ComponentLabeling) -> bool {
        self.partition_mismatch(other).is_none()
    }

    /// First node at which the two partitions disagree, if any.
    pub fn partition_mismatch(&self, other: &ComponentLabeling) -> Option<NodeId> {
        let mut forward: FxHashMap<NodeId, NodeId> = FxHashMap::default();
        let mut backward: FxHashMap<NodeId, NodeId> = FxHashMap::default();
        let mut a = self.entries.iter();
        let mut b = other.entries.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return None,
                (Some(&(n, _)), None) | (None, Some(&(n, _))) => return Some(n),
                (Some(&(na, ra)), Some(&(nb, rb))) => {
                    if na != nb {
                        return Some(na.min(nb));
                    }
                    if *forward.entry(ra).or_insert(rb) != rb || *backward.entry(rb).or_insert(ra) != ra {
                        return Some(na);
                    }
                }
            }
        }
    }
}

impl FromIterator<(NodeId, NodeId)> for ComponentLabeling {
    fn from_iter<T: IntoIterator<Item = (NodeId, NodeId)>>(iter: T) -> Self {
        ComponentLabeling::from_pairs(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(pairs: &[(u64, u64)]) -> ComponentLabeling {
        pairs.iter().map(|&(a, b)| (NodeId(a), NodeId(b))).collect()
    }

    #[test]
    fn partition_ignores_root_choice() {
        let a = lab(&[(1, 1), (2, 1), (3, 3)]);
        let b = lab(&[(1, 2), (2, 2), (3, 3)]);
        assert!(a.same_partition(&b));
        assert!(!a.is_star() || b.is_star());
    }

    #[test]
    fn partition_detects_merge_split_and_missing_nodes() {
        let a = lab(&[(1, 1), (2, 1), (3, 3)]);
        assert_eq!(a.partition_mismatch(&lab(&[(1, 1), (2, 1), (3, 1)])), Some(NodeId(3)));
        assert_eq!(a.partition_mismatch(&lab(&[(1, 1), (2, 2), (3, 3)])), Some(NodeId(2)));
        assert_eq!(a.partition_mismatch(&lab(&[(1, 1), (2, 1)])), Some(NodeId(3)));
    }

    #[test]
    fn star_and_sizes() {
        let a = lab(&[(1, 1), (2, 1), (3, 2), (4, 4)]);
        assert!(!a.is_star());
        let b = lab(&[(1, 1), (2, 1), (3, 1), (4, 4)]);
        assert!(b.is_star());
        assert_eq!(b.largest_component_size(), 3);
        assert_eq!(b.size_histogram(), vec![3, 1]);
        assert_eq!(b.get(NodeId(3)), Some(NodeId(1)));
        assert_eq!(b.get(NodeId(9)), None);
    }

    #[test]
    #[should_panic(expected = "labeled twice")]
    fn conflicting_labels_panic() {
        lab(&[(1, 1), (1, 2)]);
    }
}
