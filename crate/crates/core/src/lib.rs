//! 4-tangles, greedy 3-chop tree-decompositions, and internally 4-connected
//! minor witnesses for small graphs.
//!
//! The crate enumerates all 4-tangles of a graph, builds maximal claw-freeable
//! nested sets of 3-separations ("3-chops") with their tree-decompositions and
//! faithful torso minor-maps, and extracts, for every 4-tangle, an internally
//! 4-connected minor whose unique 4-tangle lifts back to it.
//!
//! Everything is exact combinatorial search at desk scale: tangle machinery is
//! practical up to roughly sixteen vertices.

pub mod chops;
pub mod connectivity;
pub mod error;
pub mod graph;
pub mod graphs;
pub mod minors;
pub mod separations;
pub mod tangles;
pub mod theorem;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use minors::MinorMap;
pub use separations::{OrientedSeparation, Separation, SplittingStar, Star};
pub use tangles::Tangle;
