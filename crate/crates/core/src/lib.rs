//! Multigraph orientation toolkit.
//!
//! Exact edge/arc connectivity oracles, orientation search and checking,
//! vertex expansions into k-rays and expanding rays, bond-faithful
//! decompositions, finite-resolution edge-end approximation, reachability
//! through ends, and stable limits of subgraph sequences over exhaustions.

pub mod cli;
pub mod connectivity;
pub mod decomposition;
pub mod ends;
pub mod error;
pub mod expansion;
pub mod flimit;
pub mod flow;
pub mod graph;
pub mod lazy;
pub mod orientation;
pub mod selftest;
pub mod topo;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeId, EdgeIdx, GraphBuilder, MultiGraph, VertexIdx, Walk};
pub use orientation::{Dir, Mode, Orientation};
