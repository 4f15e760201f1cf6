//! p-spectral extrema of weighted uniform hypergraphs.
//!
//! The polynomial form of a weighted r-graph is
//! `P(x) = r! * sum_e w_e * prod_{i in e} x_i`. This crate estimates its
//! maximum and minimum over the unit l^p sphere, checks the Hoffman-type
//! ratio bound for k-partite r-graphs, and builds the instance families used
//! to test it.

pub mod analysis;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod generators;
pub mod hypergraph;
pub mod io;
pub mod oracle;
pub mod solver;

pub use error::{Error, Result};
pub use hypergraph::{check_partition, lp_norm, Edge, PartitionCertificate, WeightedHypergraph};
pub use solver::{
    exact_graph_eigen, project_to_sphere, solve_max, solve_min, ExtremumKind, SolverConfig,
    SpectralEstimate, StepPolicy,
};
