//! Exact global minimum cut of a weighted undirected graph under edge
//! insertions and deletions.
//!
//! [`dynamic::DynamicMinCut`] is the entry point. It keeps a cactus of
//! minimum cuts ([`cactus::Cactus`]) that insertions shrink, and checks
//! deletions with a bounded push-relabel flow ([`flow::FlowNetwork`]).

pub mod bench;
pub mod cactus;
pub mod dynamic;
pub mod flow;
pub mod graph;
pub mod static_cactus;

pub use dynamic::{DynamicConfig, DynamicMinCut};
pub use graph::{DynGraph, VertexId, Weight};
