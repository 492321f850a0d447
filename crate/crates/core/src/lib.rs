//! Graph list-coloring toolkit.
//!
//! The crate recognizes 2-choosable graphs through their cores, solves the
//! near-3-choosability and 2-choosable-deletion problems exactly on small
//! inputs and approximately on larger ones, and builds the gadget graphs used
//! to show those problems hard, together with checkers for every structural
//! claim the gadgets are supposed to satisfy.

pub mod approx;
pub mod budget;
pub mod choosability;
pub mod enumerate;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod io;
pub mod multigraph;
pub mod reductions;

pub use budget::Budget;
pub use error::{Error, Result};
pub use graph::Graph;
pub use multigraph::CountedMultiGraph;
