//! Reconstruction of routed, edge-weighted network graphs from path
//! correlation data (PCD): the lengths of all boundary-to-boundary routes
//! together with the lengths of the shared prefixes of routes leaving a
//! common source and the shared suffixes of routes entering a common
//! receiver.
//!
//! The crate is organised around the pipeline
//!
//! ```text
//! NetworkGraph --measure--> PathCorrelationData --reconstruct--> NetworkGraph
//! ```
//!
//! * [`graph`] holds the graph model, its validator and the junction queries.
//! * [`pcd`] synthesizes PCD from a graph, validates it and builds logical
//!   source/receiver trees.
//! * [`reconstruct`] recovers a graph from PCD, for general and for
//!   symmetric routing.
//! * [`compliance`] maps any graph onto the unique graph with the same PCD
//!   that has no unused edges, no trivial and no separable vertices.
//! * [`verify`] compares PCDs and graphs and checks the full round trip.
//! * [`generator`] produces seeded random instances.
//!
//! ```
//! use netrecon::{fixtures, pcd, reconstruct, verify, DEFAULT_EPSILON};
//!
//! let g = fixtures::triangle();
//! let data = pcd::measure(&g).unwrap();
//! let out = reconstruct::reconstruct(&data, true).unwrap();
//! assert!(verify::boundary_anchored_isomorphic(&g, &out.graph, DEFAULT_EPSILON).is_some());
//! ```

pub mod cli;
pub mod compliance;
pub mod dot;
pub mod error;
pub mod fixtures;
pub mod generator;
pub mod graph;
pub mod pcd;
pub mod reconstruct;
pub mod validation;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{NetworkGraph, VertexId};
pub use pcd::PathCorrelationData;
pub use validation::{ValidationReport, ViolationCode};

/// Absolute tolerance used for all distance comparisons unless overridden.
pub const DEFAULT_EPSILON: f64 = 1e-9;
