//! Enumeration of good drawings of complete graphs, min-k filtering,
//! edge-deletion classes and an exact min-k-planarity decider.

mod catalog;
mod decide;
pub mod planarity;
mod routing;

pub use catalog::{
    delete_edge_classes, enumerate_good_drawings, enumerate_with_budget, filter_min_k, DrawingCatalog, EnumBudget,
    PartialEnumeration,
};
pub use decide::{exact_min_k_decide, exact_min_k_decide_with, realizable_configurations, DecideBudget, DecideOutcome};
pub use routing::{insert_vertex_extensions, RoutingConstraint};
