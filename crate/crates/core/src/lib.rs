//! Analysis toolkit for weighted directed patronage networks.
//!
//! The model is a directed graph in which a tie `A -> B` records that actor A
//! served under actor B, weighted 1..3 by the seniority of the role. On top of
//! that sit degree centrality, component and geodesic statistics, k-core
//! decomposition, modularity-based community detection, ego-network
//! extraction, a deterministic multiscale layout, file ingest/export, and a
//! seeded synthetic-network generator.

pub mod centrality;
pub mod community;
pub mod ego;
pub mod graph;
pub mod io;
pub mod kcore;
pub mod layout;
pub mod structure;
pub mod synth;

pub use graph::{
    Actor, ActorId, Direction, GraphError, IncludeFilter, MergeOutcome, NetworkBuilder,
    PatronageNetwork, Rank, Status, Tie, TieWeight,
};
