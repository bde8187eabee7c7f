//! Large nearly regular subgraphs.
//!
//! A graph is `c`-nearly regular when its maximum degree is at most `c` times
//! its minimum degree (the edgeless graph counts as regular). This crate
//! extracts large nearly regular subgraphs from arbitrary graphs:
//!
//! - [`peeling`]: degree peels for ratios `c > 2`.
//! - [`regularize`]: density boosting and top-degree trimming for `c = 1+ε`,
//!   plus the independent-set / dense dichotomy for sparse inputs.
//! - [`cascade`]: non-induced 5-nearly regular subgraphs with many edges via
//!   a cascade of Hall matchings.
//! - [`instances`]: extremal and random graph generators.
//! - [`oracle`]: exact small-graph search and Monte Carlo estimators.
//! - [`commands`]: dispatch behind the `nreg` binary.

pub mod cascade;
pub mod commands;
pub mod error;
pub mod exact;
pub mod graph;
pub mod instances;
pub mod oracle;
pub mod peeling;
pub mod regularize;
pub mod report;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{
    nearly_regular_check, parse_edge_list, serialize_edge_list, DegreeStats, Graph, Subgraph,
    VertexSet,
};
pub use report::{BoundCheck, ExtractionResult, Guarantee, RunReport};
