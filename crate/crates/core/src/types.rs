//! Record types shared by every phase: node ids, undirected input edges and
//! directed child→parent linkages.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Node identifier. Parent election relies on the integer order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub u64);

impl NodeId {
    #[inline]
    pub const fn get(self) -> u64 {
        self.0
    }
}

impl From<u64> for NodeId {
    fn from(v: u64) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Undirected linkage between two nodes; `(u, v)` and `(v, u)` are the same edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
}

impl Edge {
    pub fn new(u: impl Into<NodeId>, v: impl Into<NodeId>) -> Self {
        Edge { u: u.into(), v: v.into() }
    }

    pub fn is_self_loop(&self) -> bool {
        self.u == self.v
    }
}

impl From<(u64, u64)> for Edge {
    fn from((u, v): (u64, u64)) -> Self {
        Edge::new(u, v)
    }
}

/// Directed child→parent record. `child == parent` is a self-linkage: either a
/// singleton or a node announcing that it became a parent somewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairRecord {
    pub child: NodeId,
    pub parent: NodeId,
}

impl PairRecord {
    pub fn new(child: impl Into<NodeId>, parent: impl Into<NodeId>) -> Self {
        PairRecord { child: child.into(), parent: parent.into() }
    }

    pub fn is_self_linkage(&self) -> bool {
        self.child == self.parent
    }

    pub fn reversed(&self) -> Self {
        PairRecord { child: self.parent, parent: self.child }
    }
}

impl From<(u64, u64)> for PairRecord {
    fn from((c, p): (u64, u64)) -> Self {
        PairRecord::new(c, p)
    }
}

/// Fixed criterion for electing one parent among candidates.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Election {
    #[default]
    Min,
    Max,
}

impl Election {
    /// True when `a` wins an election against `b`.
    #[inline]
    pub fn prefers(self, a: NodeId, b: NodeId) -> bool {
        match self {
            Election::Min => a < b,
            Election::Max => a > b,
        }
    }

    #[inline]
    pub fn pick(self, a: NodeId, b: NodeId) -> NodeId {
        if self.prefers(b, a) {
            b
        } else {
            a
        }
    }

    /// Winner among `nodes`, or `None` when empty.
    pub fn elect<I: IntoIterator<Item = NodeId>>(self, nodes: I) -> Option<NodeId> {
        nodes.into_iter().reduce(|a, b| self.pick(a, b))
    }
}

impl std::str::FromStr for Election {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(Election::Min),
            "max" => Ok(Election::Max),
            other => Err(format!("unknown election `{other}` (expected min or max)")),
        }
    }
}

impl fmt::Display for Election {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Election::Min => "min",
            Election::Max => "max",
        })
    }
}
