//! Seeded synthetic graph families with known structure: uniform sparse
//! graphs, disjoint cliques with optional bridges, long chains, and
//! hub-dominated graphs with one very large component.
//!
//! Ids are relabeled through a seeded permutation (unless disabled) so that
//! generation order says nothing about which node is a component minimum.

use std::fmt;
use std::str::FromStr;

use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Result, UfsError};
use crate::labeling::ComponentLabeling;
use crate::types::{Edge, NodeId};

/// Component size above which a component counts as "large".
pub const LCC_THRESHOLD: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Sparse,
    CliqueClusters,
    Chain,
    SkewedLcc,
}

impl GraphKind {
    pub const ALL: [GraphKind; 4] = [GraphKind::Sparse, GraphKind::CliqueClusters, GraphKind::Chain, GraphKind::SkewedLcc];

    pub fn name(self) -> &'static str {
        match self {
            GraphKind::Sparse => "sparse",
            GraphKind::CliqueClusters => "clique_clusters",
            GraphKind::Chain => "chain",
            GraphKind::SkewedLcc => "skewed_lcc",
        }
    }
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GraphKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "sparse" => Ok(GraphKind::Sparse),
            "clique_clusters" | "clique" | "cliques" => Ok(GraphKind::CliqueClusters),
            "chain" => Ok(GraphKind::Chain),
            "skewed_lcc" | "skewed" => Ok(GraphKind::SkewedLcc),
            other => Err(format!("unknown graph kind `{other}`")),
        }
    }
}

/// Parameters of one generated graph.
///
/// `edge_count` means: random edges (sparse), bridges between clusters
/// (clique_clusters), extra intra-component edges (skewed_lcc); chains ignore it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GraphKind,
    pub node_count: usize,
    pub edge_count: usize,
    pub cluster_size: usize,
    pub hub_count: usize,
    pub tail_exponent: f64,
    pub seed: u64,
    /// Relabel ids through a seeded permutation.
    pub permute_ids: bool,
    /// Emit edges in a seeded random order instead of generation order.
    pub shuffle_edges: bool,
}

impl GenSpec {
    pub fn new(kind: GraphKind, node_count: usize, seed: u64) -> Self {
        GenSpec {
            kind,
            node_count,
            edge_count: node_count / 2,
            cluster_size: 32,
            hub_count: 8,
            tail_exponent: 2.0,
            seed,
            permute_ids: true,
            shuffle_edges: false,
        }
    }

    pub fn chain(node_count: usize, seed: u64) -> Self {
        Self::new(GraphKind::Chain, node_count, seed)
    }

    pub fn sparse(node_count: usize, edge_count: usize, seed: u64) -> Self {
        GenSpec { edge_count, ..Self::new(GraphKind::Sparse, node_count, seed) }
    }

    pub fn clique_clusters(clusters: usize, cluster_size: usize, bridges: usize, seed: u64) -> Self {
        GenSpec {
            cluster_size,
            edge_count: bridges,
            ..Self::new(GraphKind::CliqueClusters, clusters * cluster_size, seed)
        }
    }

    pub fn skewed_lcc(node_count: usize, hub_count: usize, tail_exponent: f64, seed: u64) -> Self {
        GenSpec { hub_count, tail_exponent, edge_count: node_count / 10, ..Self::new(GraphKind::SkewedLcc, node_count, seed) }
    }

    /// Checks the documented ranges:
    /// - every kind: `1 <= node_count <= 2^32`
    /// - sparse: `edge_count <= 2^32`, `node_count >= 2` when edges are requested
    /// - clique_clusters: `1 <= cluster_size <= 4096`, `cluster_size <= node_count`;
    ///   bridges need at least two clusters
    /// - skewed_lcc: `1 <= hub_count <= node_count`, `tail_exponent` finite in `[0, 8]`
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(UfsError::InvalidSpec(m));
        if self.node_count == 0 || self.node_count > 1 << 32 {
            return bad(format!("node_count {} outside 1..=2^32", self.node_count));
        }
        match self.kind {
            GraphKind::Sparse => {
                if self.edge_count > 1 << 32 {
                    return bad(format!("edge_count {} too large", self.edge_count));
                }
                if self.edge_count > 0 && self.node_count < 2 {
                    return bad("sparse graphs with edges need at least 2 nodes".into());
                }
            }
            GraphKind::CliqueClusters => {
                if self.cluster_size == 0 || self.cluster_size > 4096 {
                    return bad(format!("cluster_size {} outside 1..=4096", self.cluster_size));
                }
                if self.cluster_size > self.node_count {
                    return bad("cluster_size exceeds node_count".into());
                }
                if self.edge_count > 0 && self.node_count.div_ceil(self.cluster_size) < 2 {
                    return bad("bridges need at least two clusters".into());
                }
            }
            GraphKind::Chain => {}
            GraphKind::SkewedLcc => {
                if self.hub_count == 0 || self.hub_count > self.node_count {
                    return bad(format!("hub_count {} outside 1..=node_count", self.hub_count));
                }
                if !self.tail_exponent.is_finite() || !(0.0..=8.0).contains(&self.tail_exponent) {
                    return bad(format!("tail_exponent {} outside [0, 8]", self.tail_exponent));
                }
            }
        }
        Ok(())
    }
}

/// What the generator knows about its output.
#[derive(Clone, Debug, Default)]
pub struct GeneratorTruth {
    /// Exact component count, when the construction determines it.
    pub component_count: Option<usize>,
    /// Exact membership labeled by component minimum, when known.
    pub membership: Option<ComponentLabeling>,
    /// Largest node degree (self-loops ignored).
    pub max_degree: usize,
}

/// Generates the edge list for `spec`. Identical specs give identical output.
pub fn generate(spec: &GenSpec) -> Result<(Vec<Edge>, GeneratorTruth)> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.node_count;

    // edges and component ids in generation-order node indices
    let (raw, groups): (Vec<(u64, u64)>, Option<Vec<u32>>) = match spec.kind {
        GraphKind::Sparse => (sparse_edges(&mut rng, n, spec.edge_count), None),
        GraphKind::Chain => {
            let edges = if n == 1 { vec![(0, 0)] } else { (0..n as u64 - 1).map(|i| (i, i + 1)).collect() };
            (edges, Some(vec![0; n]))
        }
        GraphKind::CliqueClusters => {
            let (e, g) = clique_edges(&mut rng, n, spec.cluster_size, spec.edge_count);
            (e, Some(g))
        }
        GraphKind::SkewedLcc => {
            let (e, g) = skewed_edges(&mut rng, n, spec.hub_count, spec.tail_exponent, spec.edge_count);
            (e, Some(g))
        }
    };

    let mut ids: Vec<u64> = (0..n as u64).collect();
    if spec.permute_ids {
        ids.shuffle(&mut rng);
    }
    let mut edges: Vec<Edge> = raw.iter().map(|&(a, b)| Edge::new(ids[a as usize], ids[b as usize])).collect();
    if spec.shuffle_edges {
        edges.shuffle(&mut rng);
    }

    let mut degree = vec![0u32; n];
    for &(a, b) in &raw {
        if a != b {
            degree[a as usize] += 1;
            degree[b as usize] += 1;
        }
    }
    let max_degree = degree.iter().copied().max().unwrap_or(0) as usize;

    let membership = groups.map(|g| {
        let mut min_id: Vec<u64> = vec![u64::MAX; n];
        for (i, &c) in g.iter().enumerate() {
            min_id[c as usize] = min_id[c as usize].min(ids[i]);
        }
        (0..n).map(|i| (NodeId(ids[i]), NodeId(min_id[g[i] as usize]))).collect::<ComponentLabeling>()
    });
    let truth = GeneratorTruth {
        component_count: membership.as_ref().map(ComponentLabeling::component_count),
        membership,
        max_degree,
    };
    Ok((edges, truth))
}

fn sparse_edges(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<(u64, u64)> {
    (0..m)
        .map(|_| {
            let a = rng.gen_range(0..n as u64);
            let mut b = rng.gen_range(0..n as u64 - 1);
            if b >= a {
                b += 1;
            }
            (a, b)
        })
        .collect()
}

fn clique_edges(rng: &mut ChaCha8Rng, n: usize, size: usize, bridges: usize) -> (Vec<(u64, u64)>, Vec<u32>) {
    let clusters = n.div_ceil(size);
    let mut edges = Vec::new();
    for c in 0..clusters {
        let lo = c * size;
        let hi = (lo + size).min(n);
        if hi - lo == 1 {
            edges.push((lo as u64, lo as u64));
        }
        for a in lo..hi {
            for b in a + 1..hi {
                edges.push((a as u64, b as u64));
            }
        }
    }

    // cluster-level connectivity for the bridges
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); clusters];
    for _ in 0..bridges {
        let a = rng.gen_range(0..n);
        let b = loop {
            let b = rng.gen_range(0..n);
            if b / size != a / size {
                break b;
            }
        };
        edges.push((a as u64, b as u64));
        adj[a / size].push(b / size);
        adj[b / size].push(a / size);
    }
    let mut comp = vec![u32::MAX; clusters];
    for start in 0..clusters {
        if comp[start] != u32::MAX {
            continue;
        }
        comp[start] = start as u32;
        let mut stack = vec![start];
        while let Some(c) = stack.pop() {
            for &d in &adj[c] {
                if comp[d] == u32::MAX {
                    comp[d] = start as u32;
                    stack.push(d);
                }
            }
        }
    }
    let groups = (0..n).map(|i| comp[i / size]).collect();
    (edges, groups)
}

/// Hubs are indices `0..hubs`. Every other node links to a hub picked with
/// weight `rank^-alpha`; `extra` edges then join random pairs inside one hub's
/// component, which builds chains and raises degrees without merging components.
fn skewed_edges(
    rng: &mut ChaCha8Rng,
    n: usize,
    hubs: usize,
    alpha: f64,
    extra: usize,
) -> (Vec<(u64, u64)>, Vec<u32>) {
    let weights: Vec<f64> = (1..=hubs).map(|r| (r as f64).powf(-alpha)).collect();
    let pick = WeightedIndex::new(&weights).expect("positive weights");
    let mut members: Vec<Vec<u64>> = (0..hubs as u64).map(|h| vec![h]).collect();
    let mut groups: Vec<u32> = (0..hubs as u32).collect();
    let mut edges = Vec::with_capacity(n + extra);
    for i in hubs..n {
        let h = pick.sample(rng);
        edges.push((i as u64, h as u64));
        members[h].push(i as u64);
        groups.push(h as u32);
    }
    for (h, m) in members.iter().enumerate() {
        if m.len() == 1 {
            edges.push((h as u64, h as u64));
        }
    }
    let populated: Vec<usize> = (0..hubs).filter(|&h| members[h].len() > 2).collect();
    if !populated.is_empty() {
        for _ in 0..extra {
            let h = populated[pick.sample(rng) % populated.len()];
            let m = &members[h];
            let a = m[rng.gen_range(1..m.len())];
            let b = m[rng.gen_range(1..m.len())];
            if a != b {
                edges.push((a, b));
            }
        }
    }
    (edges, groups)
}
