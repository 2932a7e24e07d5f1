//! Conflict-free graph colorings under closed (CF-CN) and open (CF-ON)
//! neighborhoods.
//!
//! A coloring is conflict-free when every vertex sees some color exactly once
//! in its neighborhood. The crate provides verifiers, an exact backtracking
//! oracle, polynomial constructions for bipartite, split, cograph and interval
//! graphs, kernelization for graphs close to a cluster graph, an additive
//! approximation for graphs close to a threshold graph, and the split-graph
//! hardness gadget.

pub mod classes;
pub mod coloring;
pub mod fpt;
pub mod generators;
pub mod graph;
pub mod hardness;
pub mod interval;
pub mod oracle;
pub mod polysolve;

pub use coloring::{verify, verify_cfcn, verify_cfon, Color, Coloring, Variant, Verdict};
pub use graph::{Graph, Vertex, VertexSet};
