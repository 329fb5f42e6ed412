//! Motif prediction for undirected graphs.
//!
//! The crate scores candidate motifs (cliques, stars, stars with
//! deal-breaker pairs, dense clusters) from first-order link prediction
//! heuristics, generates balanced positive/negative motif samples,
//! featurizes their enclosing subgraphs for a downstream graph classifier,
//! and benchmarks the heuristics by AUC.
//!
//! Module map:
//!
//! * [`graph`]: CSR graph, edge-list loading, BFS.
//! * [`motif`]: templates, queries and the pair taxonomy.
//! * [`link`]: Jaccard / common neighbors / Adamic-Adar and normalization.
//! * [`aggregate`]: Mul / Avg / Min motif scores.
//! * [`sampling`]: positive enumeration and negative strategies.
//! * [`featurize`]: enclosing subgraphs, masking, node labels.
//! * [`embedding`]: random-walk node embeddings.
//! * [`dataset`]: JSON Lines export for the trainer.
//! * [`eval`]: AUC, accuracy and the benchmark runner.
//! * [`config`], [`commands`]: layered run settings and the command
//!   implementations behind the `motif-predict` binary.

pub mod aggregate;
pub mod commands;
pub mod config;
pub mod dataset;
pub mod embedding;
pub mod error;
pub mod eval;
pub mod featurize;
pub mod generators;
pub mod graph;
pub mod link;
pub mod matrix;
pub mod motif;
pub mod sampling;

pub use error::{Error, Result};
pub use graph::{Graph, Vertex};
