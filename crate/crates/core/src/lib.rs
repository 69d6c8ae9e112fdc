//! Two-phase depth-first exploration of p-random subgraphs, with the graph
//! machinery, extremal-number brackets and Monte Carlo harness around it.

pub mod dfs;
pub mod extremal;
pub mod generators;
pub mod graph;
pub mod harness;
pub mod percolation;
pub mod rng;
pub mod verify;

pub use graph::{ComponentPartition, DegreeStats, Girth, Graph, GraphError};
