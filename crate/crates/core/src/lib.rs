//! Lossless hierarchical graph summarization.
//!
//! A graph is encoded as a forest of supernodes whose leaves are the input
//! nodes, plus positive and negative super-edges between supernodes at any
//! level. [`summarize`] builds such an encoding greedily by merging root
//! supernodes and re-encoding the edges around each merge, then prunes it.

pub mod encoder;
pub mod error;
pub mod flat;
pub mod graph;
pub mod query;
mod rng;
pub mod slugger;
pub mod summary;
pub mod synth;

pub use error::{Error, Result};
pub use flat::FlatEncoding;
pub use graph::{InputGraph, NodeId};
pub use slugger::{summarize, SluggerConfig};
pub use summary::{HierarchicalSummary, Sign, SupernodeId};
