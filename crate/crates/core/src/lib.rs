//! Combinatorial toolkit for min-k-planar drawings.
//!
//! * [`graph`] and [`partition`]: labeled graphs and 3-Partition instances.
//! * [`drawing`]: drawings as planarizations with a rotation system, their
//!   predicates (simplicity, crossing counts, (min-)k-planarity), faces,
//!   subdrawings and isomorphism keys.
//! * [`enumerate`]: good drawings of small complete graphs, min-k filtering,
//!   edge-deletion classes and an exact decider for tiny graphs.
//! * [`reduction`]: the uncrossable-edge gadget, the 3-Partition reduction,
//!   yes-instance drawings and partition extraction.
//! * [`render`] and [`checks`]: SVG output and the verification report.

pub mod checks;
pub mod drawing;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod partition;
pub mod reduction;
pub mod render;

pub use drawing::{Drawing, KeyMode};
pub use error::{Error, Result};
pub use graph::{complete_graph, Graph, RoleLabel};
pub use partition::{Partition, ThreePartitionInstance};
