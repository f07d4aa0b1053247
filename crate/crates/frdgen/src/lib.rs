//! Null-model random graphs for directed networks.
//!
//! Real directed networks carry three degree distributions: the in-degree,
//! the out-degree, and the reciprocal degree (pairs of nodes pointing at
//! each other). This crate generates random graphs matching prescribed
//! versions of all three:
//!
//! - [`generate::fd_generate`] — the *fast directed* (FD) model, a directed
//!   Chung-Lu variant matching total in- and out-degree distributions,
//! - [`generate::frd_generate`] — the *fast reciprocal directed* (FRD)
//!   model, which additionally matches the reciprocal-degree distribution.
//!
//! Both are built on weighted per-degree vertex pools ([`sampler`]) and run
//! in O(m) time and O(m) random numbers for m edges. The [`expectation`]
//! module provides the closed-form Poisson predictions for what a single
//! run will actually realize, including the degree-1 pool blowup correction.
//!
//! [`graph`] holds the directed-graph data model and degree/reciprocity
//! measurements; [`io`] reads and writes SNAP-style edge lists and a
//! machine-parseable stats/distribution document.

pub mod expectation;
pub mod generate;
pub mod graph;
pub mod hist;
pub mod io;
pub mod sampler;

pub use generate::{fd_generate, frd_generate, GenerationConfig, GenerationReport};
pub use graph::{classify_edges, compute_stats, simplify, DiGraph, GraphStats};
pub use hist::{DegreeHistogram, DegreeKind};
pub use sampler::{build_pools, vertex_select, PoolTable, SelectionResult};
