use thiserror::Error;

use crate::metamodel::{ElementId, ElementKind, ElementRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid element id `{0}`")]
    InvalidId(String),
    #[error("invalid view `{0}` (expected mes, pp or ts)")]
    InvalidView(String),
    #[error("invalid element reference `{0}` (expected view:id)")]
    InvalidRef(String),
    #[error("element `{0}` not found")]
    NotFound(ElementRef),
    #[error("element `{id}` of kind {kind} is not supported here")]
    UnsupportedKind { id: ElementId, kind: ElementKind },
}

/// Why a set of sub-models could not be assembled into a [`crate::MesSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResolveErrorKind {
    DuplicateId,
    DanglingRef,
    EmptyGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message}")]
pub struct ResolveError {
    pub kind: ResolveErrorKind,
    /// The element or link the problem is attached to.
    pub subject: ElementId,
    pub message: String,
}
