//! Reports derived from a specification, and DOT export.
//!
//! Every report type serializes to a structured form and has a
//! deterministic text rendering.

mod dot;
mod links;
mod stats;
mod status;
mod tree;

use thiserror::Error;

use crate::metamodel::ViewTag;

pub use dot::{export_dot, render_ts_tree};
pub use links::{
    link_report, render_deployments, render_interfaces, render_link_report, LinkReport,
};
pub use stats::{model_stats, render_stats, DiagramStats, ModelStats, Totals, ViewStats};
pub use status::{render_status, status_report, StatusEntry, StatusReport};
pub use tree::{diagram_tree, render_tree, resolve_diagram, DiagramTree, TreeNode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReportError {
    #[error("the {} view has no process diagrams", .0.label())]
    UnsupportedView(ViewTag),
    #[error("unknown diagram `{path}`: {reason}")]
    UnknownDiagram { path: String, reason: String },
}
