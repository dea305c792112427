use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid drawing: {0}")]
    InvalidDrawing(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("drawing is not simple")]
    NotSimple,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("3-Partition target is not an integer (sum {sum}, n {n})")]
    NonIntegralTarget { sum: u64, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("stale gadget handle: {0}")]
    StaleHandle(String),
    #[error("gadget edge crossed by an external edge: {0}")]
    GadgetCrossedExternally(String),
    #[error("skeleton is not a cycle of s-t paths: {0}")]
    SkeletonShape(String),
    #[error("ambiguous placement: {0}")]
    AmbiguousPlacement(String),
    #[error("template construction failed: {0}")]
    Template(String),
    #[error("layout failed: {0}")]
    Layout(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
