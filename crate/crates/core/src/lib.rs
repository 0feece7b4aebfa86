//! Connected components by union-find shuffle: a local weighted union-find
//! per partition, iterative shuffle rounds with vertex pruning, and a final
//! path-compression pass producing star graphs. The map-reduce shuffle is
//! simulated in-process across `k` logical partitions.
//!
//! With the default `parallel` feature, buckets within a round run on a rayon
//! pool sized by [`EngineConfig::worker_count`]; a worker count of one (or
//! building without the feature) runs everything on the calling thread.

pub mod baselines;
pub mod bench;
pub mod dsu;
pub mod engine;
pub mod error;
pub mod generators;
pub mod io;
pub mod labeling;
pub mod types;

pub use dsu::{sequential_components, DisjointSetForest};
pub use engine::{run, EngineConfig, RunMetrics};
pub use error::{Result, UfsError};
pub use labeling::ComponentLabeling;
pub use types::{Edge, Election, NodeId, PairRecord};
