//! Contagious networks grown over potential networks.
//!
//! The crate builds classical "potential" graphs (small-world rings, planted
//! cliques, random baselines), spreads random-edge cascades over them, and
//! measures the infected subgraph: degree tails, diameter, densification and
//! the network community profile. Independent oracles (a Yule process,
//! exhaustive conductance minimisation, clique occupancy counts) check the
//! cascade engines and metrics, and [`experiment`] wires everything into
//! reproducible config-driven runs that emit CSV tables.

pub mod cascade;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod metrics;
pub mod oracles;
pub mod rng;

pub use graph::{Graph, GraphError, VertexSet};
